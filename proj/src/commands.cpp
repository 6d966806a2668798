#include "heegner/commands.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace heegner {

namespace fs = std::filesystem;

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == delim) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string vec_str(const KVector& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ; ";
        s += v[i].str();
    }
    return s;
}

KVector vec_parse(const FieldSpec* F, const std::string& text) {
    KVector out;
    for (auto& part : split(text, ';')) out.push_back(parse_field_elem(F, part));
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

[[noreturn]] void fail_at(const std::string& path, size_t line, const std::string& msg) {
    throw CommandError(path + ":" + std::to_string(line) + ": " + msg);
}

/// A vector of negative norm in the definite part, embedded in L.
KVector pick_lambda(const CuspData& cusp) {
    const HermitianLattice& D = *cusp.D_part;
    for (long k = 1; k <= 8; ++k) {
        auto v = enumerate_norm_coset(D, D.zero(), Rational(-k));
        if (!v.empty()) return cusp.embed_D(v.front());
    }
    throw CommandError("definite part has no short negative-norm vector");
}

}  // namespace

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CommandError(path + ": cannot open fixture");

    std::shared_ptr<const FieldSpec> F;
    long rank = -1;
    std::vector<std::pair<KVector, size_t>> gram_rows;  // row, line number
    std::optional<KVector> ell, ellp;
    std::optional<Rational> N;
    std::vector<KVector> dsub;

    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t sp = s.find_first_of(" \t");
        std::string key = s.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : trim(s.substr(sp));
        try {
            if (key == "field") {
                F = FieldSpec::create(std::stol(rest));
            } else if (key == "rank") {
                rank = std::stol(rest);
                if (rank <= 0) fail_at(path, lineno, "rank must be positive");
            } else if (key == "gram") {
                if (!F) fail_at(path, lineno, "gram before field");
                gram_rows.emplace_back(vec_parse(F.get(), rest), lineno);
            } else if (key == "ell") {
                if (!F) fail_at(path, lineno, "ell before field");
                ell = vec_parse(F.get(), rest);
            } else if (key == "ellp") {
                if (!F) fail_at(path, lineno, "ellp before field");
                ellp = vec_parse(F.get(), rest);
            } else if (key == "N") {
                N = rat_parse(rest);
            } else if (key == "dsub") {
                if (!F) fail_at(path, lineno, "dsub before field");
                dsub.push_back(vec_parse(F.get(), rest));
            } else {
                fail_at(path, lineno, "unknown key '" + key + "'");
            }
        } catch (const CommandError&) {
            throw;
        } catch (const std::exception& e) {
            fail_at(path, lineno, e.what());
        }
    }

    if (!F) throw CommandError(path + ": missing field line");
    if (rank < 0) throw CommandError(path + ": missing rank line");
    if (gram_rows.size() != static_cast<size_t>(rank))
        throw CommandError(path + ": expected " + std::to_string(rank) + " gram rows, got " +
                           std::to_string(gram_rows.size()));
    KMatrix gram;
    for (auto& [row, ln] : gram_rows) {
        if (row.size() != static_cast<size_t>(rank))
            fail_at(path, ln, "gram row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(rank));
        gram.push_back(row);
    }
    for (size_t i = 0; i < gram.size(); ++i)
        for (size_t j = 0; j < gram.size(); ++j)
            if (gram[j][i] != gram[i][j].conj())
                fail_at(path, gram_rows[j].second,
                        "gram entry (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                            ") is not the conjugate of (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
    if (!ell) throw CommandError(path + ": missing ell line");
    if (!ellp) throw CommandError(path + ": missing ellp line");
    if (ell->size() != gram.size() || ellp->size() != gram.size())
        throw CommandError(path + ": ell/ellp length does not match the rank");

    Fixture fx;
    fx.path = path;
    try {
        auto L = std::make_shared<HermitianLattice>(F, gram);
        fx.cusp = build_cusp(L, *ell, *ellp);
    } catch (const std::exception& e) {
        throw CommandError(path + ": " + e.what());
    }

    if (N || !dsub.empty()) {
        if (!N || dsub.size() != 2 * fx.cusp.D_part->rank())
            throw CommandError(path + ": heisenberg override needs N and 2n dsub rows");
        for (auto& t : dsub) {
            if (t.size() != fx.cusp.D_part->rank())
                throw CommandError(path + ": dsub row length does not match the definite rank");
            if (!heisenberg_in_gamma(fx.cusp, 0, t))
                throw CommandError(path + ": dsub vector outside the discriminant kernel");
        }
        if (!heisenberg_in_gamma(fx.cusp, *N, fx.cusp.D_part->zero()))
            throw CommandError(path + ": central translation N outside the discriminant kernel");
        fx.params_override = HeisenbergParams{*N, dsub};
    }
    return fx;
}

HeisenbergParams fixture_params(const Fixture& fx) {
    if (fx.params_override) return *fx.params_override;
    return derive_heisenberg_params(fx.cusp);
}

HeegnerCombo load_divisor(const Fixture& fx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CommandError(path + ": cannot open divisor file");
    HeegnerCombo combo;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::istringstream is(s);
        std::string key, mtext;
        long beta = -1, coeff = 0;
        is >> key >> beta >> mtext >> coeff;
        if (key != "term" || is.fail())
            fail_at(path, lineno, "expected 'term <beta-index> <m> <coeff>'");
        if (beta < 0) fail_at(path, lineno, "beta index must be nonnegative");
        Rational m;
        try {
            m = rat_parse(mtext);
        } catch (const std::exception& e) {
            fail_at(path, lineno, e.what());
        }
        combo.terms[{static_cast<size_t>(beta), m}] += coeff;
    }
    try {
        validate_combo(fx.cusp, combo);
    } catch (const std::invalid_argument& e) {
        throw CommandError(path + ": " + e.what());
    }
    return combo;
}

// ---- enumeration cache ----

EnumCache::EnumCache(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    EnumCacheHooks hooks;
    hooks.load = [this](const HermitianLattice& D, const KVector& gamma,
                        const Rational& m) -> std::optional<std::vector<KVector>> {
        std::string gstr = vec_str(gamma), mstr = rat_str(m);
        fs::path file = fs::path(dir_) /
                        ("enum-" + hex64(D.hash()) + "-" + hex64(fnv1a(gstr + "|" + mstr)) + ".txt");
        std::ifstream in(file);
        if (!in) {
            ++misses_;
            return std::nullopt;
        }
        std::string key, val;
        std::vector<KVector> vecs;
        size_t count = 0;
        bool ok = false;
        std::string line;
        while (std::getline(in, line)) {
            size_t sp = line.find(' ');
            key = line.substr(0, sp);
            val = sp == std::string::npos ? "" : line.substr(sp + 1);
            if (key == "gamma" && val != gstr) break;
            if (key == "m" && val != mstr) break;
            if (key == "count") {
                count = std::stoul(val);
                ok = true;
            }
            if (key == "v") vecs.push_back(vec_parse(D.field(), val));
        }
        if (!ok || vecs.size() != count) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        return vecs;
    };
    hooks.store = [this](const HermitianLattice& D, const KVector& gamma, const Rational& m,
                         const std::vector<KVector>& vecs) {
        std::string gstr = vec_str(gamma), mstr = rat_str(m);
        fs::path file = fs::path(dir_) /
                        ("enum-" + hex64(D.hash()) + "-" + hex64(fnv1a(gstr + "|" + mstr)) + ".txt");
        fs::path tmp = file;
        tmp += ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp);
            out << "gamma " << gstr << "\n";
            out << "m " << mstr << "\n";
            out << "count " << vecs.size() << "\n";
            for (auto& v : vecs) out << "v " << vec_str(v) << "\n";
        }
        std::error_code ec;
        fs::rename(tmp, file, ec);
        if (ec) fs::remove(tmp, ec);
    };
    set_enum_cache_hooks(std::move(hooks));
}

EnumCache::~EnumCache() { set_enum_cache_hooks({}); }

// ---- commands ----

int cmd_lattice_info(const std::string& fixture_path, std::ostream& out) {
    Timer timer;
    Fixture fx = load_fixture(fixture_path);
    const CuspData& c = fx.cusp;
    HeisenbergParams hp = fixture_params(fx);

    auto invariants = [](const DiscriminantGroup& g) {
        std::string s;
        for (auto& f : g.invariant_factors()) {
            if (!s.empty()) s += " ";
            s += f.get_str();
        }
        return s.empty() ? "trivial" : s;
    };

    // index [D : D_{ell,Gamma}] via the Smith form of the basis matrix
    BigInt index = 1;
    if (!hp.D_sub_basis.empty()) {
        size_t n2 = 2 * c.D_part->rank();
        ZMatrix M(n2, ZVector(hp.D_sub_basis.size()));
        for (size_t j = 0; j < hp.D_sub_basis.size(); ++j) {
            QVector col = c.D_part->real_coords(hp.D_sub_basis[j]);
            for (size_t i = 0; i < n2; ++i) M[i][j] = col[i].get_num();
        }
        for (auto& d : smith_normal_form(M).diag) index *= d;
        index = abs(index);
    }

    auto [pos, neg] = c.L->signature();
    out << "command lattice-info\n";
    out << "fixture " << fixture_path << "\n";
    out << "field-disc " << c.L->field()->disc << "\n";
    out << "rank " << c.L->rank() << "\n";
    out << "signature " << pos << " " << neg << "\n";
    out << "lattice-hash " << hex64(c.L->hash()) << "\n";
    out << "disc-order-L " << c.disc_L->size() << "\n";
    out << "disc-invariants-L " << invariants(*c.disc_L) << "\n";
    out << "disc-order-D " << c.disc_D->size() << "\n";
    out << "disc-invariants-D " << invariants(*c.disc_D) << "\n";
    out << "M1 " << rat_str(c.M1) << "\n";
    out << "M2 " << rat_str(c.M2) << "\n";
    out << "script-L-order " << c.L_script.size() << "\n";
    out << "N " << rat_str(hp.N) << "\n";
    out << "D-sub-index " << index.get_str() << "\n";
    out << "timing-ms " << timer.ms() << "\n";
    return 0;
}

int cmd_enumerate(const std::string& fixture_path, size_t gamma_index, const Rational& m,
                  bool count_only, const std::string& cache_dir, std::ostream& out) {
    Timer timer;
    Fixture fx = load_fixture(fixture_path);
    const HermitianLattice& D = *fx.cusp.D_part;
    if (gamma_index >= fx.cusp.disc_D->size())
        throw CommandError("gamma index " + std::to_string(gamma_index) + " out of range (order " +
                           std::to_string(fx.cusp.disc_D->size()) + ")");
    if (m >= 0) throw CommandError("m must be negative");

    std::optional<EnumCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);
    auto vecs = enumerate_norm_coset(D, fx.cusp.disc_D->coset_rep(gamma_index), m);
    std::string status = cache ? (cache->hits() > 0 ? "hit" : "miss") : "off";

    out << "command enumerate\n";
    out << "fixture " << fixture_path << "\n";
    out << "lattice-hash " << hex64(D.hash()) << "\n";
    out << "gamma " << gamma_index << "\n";
    out << "m " << rat_str(m) << "\n";
    out << "cache " << status << "\n";
    out << "count " << vecs.size() << "\n";
    if (!count_only)
        for (auto& v : vecs) out << "vec " << vec_str(v) << "\n";
    out << "timing-ms " << timer.ms() << "\n";
    return 0;
}

int cmd_torsion(const std::string& fixture_path, const std::string& divisor_path,
                TorsionRoute route, const std::string& cache_dir, std::ostream& out,
                bool inject_fault) {
    Timer timer;
    Fixture fx = load_fixture(fixture_path);
    HeegnerCombo combo = load_divisor(fx, divisor_path);
    std::optional<EnumCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);

    out << "command torsion\n";
    out << "fixture " << fixture_path << "\n";
    out << "divisor " << divisor_path << "\n";
    out << "route "
        << (route == TorsionRoute::Bilinear ? "bilinear"
                                            : route == TorsionRoute::Theta ? "theta" : "both")
        << "\n";

    std::optional<bool> bil_torsion, theta_torsion;
    if (route != TorsionRoute::Theta) {
        TorsionVerdict v = torsion_check_combo(fx.cusp, fixture_params(fx), combo);
        bil_torsion = v.is_torsion;
        if (inject_fault) bil_torsion = !*bil_torsion;
        out << "verdict-bilinear " << (*bil_torsion ? "torsion" : "non-torsion") << "\n";
        if (v.is_torsion) out << "q-factor " << rat_str(v.q_factor) << "\n";
        if (v.witness) {
            out << "witness-pair " << v.witness->i << " " << v.witness->j << "\n";
            out << "witness-residual " << v.witness->residual.str() << "\n";
        }
    }
    if (route != TorsionRoute::Bilinear) {
        auto [ok, witnesses] = obstruction_check(fx.cusp, combo);
        theta_torsion = ok;
        out << "verdict-theta " << (ok ? "torsion" : "non-torsion") << "\n";
        if (!witnesses.empty()) {
            auto vs = spanning_set(fx.cusp);
            out << "theta-witness-v " << vs[witnesses.front().v_index].label << "\n";
            out << "theta-witness-residual " << witnesses.front().residual.str() << "\n";
            out << "theta-witness-count " << witnesses.size() << "\n";
        }
    }
    if (cache) {
        out << "cache-hits " << cache->hits() << "\n";
        out << "cache-misses " << cache->misses() << "\n";
    }

    if (route == TorsionRoute::Both) {
        bool agree = *bil_torsion == *theta_torsion;
        out << "agreement " << (agree ? "yes" : "no") << "\n";
        out << "timing-ms " << timer.ms() << "\n";
        if (!agree) {
            out << "alarm torsion criteria disagree\n";
            return 3;
        }
        return *bil_torsion ? 0 : 1;
    }
    out << "timing-ms " << timer.ms() << "\n";
    bool verdict = route == TorsionRoute::Bilinear ? *bil_torsion : *theta_torsion;
    return verdict ? 0 : 1;
}

namespace {

PolynomialP parse_v_spec(const CuspData& cusp, const std::string& spec) {
    const HermitianLattice& D = *cusp.D_part;
    const FieldSpec* F = D.field();
    PolynomialP v{D.zero(), D.zero(), spec};
    std::string s = trim(spec);
    if (s == "0") return v;
    for (auto& term : split(s, '+')) {
        bool imag = term.rfind("i*", 0) == 0;
        std::string base = imag ? term.substr(2) : term;
        if (base.size() < 2 || base[0] != 'f')
            throw CommandError("invalid v-spec term '" + term + "'");
        size_t k = 0;
        try {
            k = std::stoul(base.substr(1));
        } catch (const std::exception&) {
            throw CommandError("invalid v-spec term '" + term + "'");
        }
        if (k < 1 || k > D.rank())
            throw CommandError("v-spec index out of range in '" + term + "'");
        (imag ? v.v_ik : v.v_k)[k - 1] += FieldElem(F, 1, 0);
    }
    return v;
}

}  // namespace

int cmd_theta(const std::string& fixture_path, const std::string& v_spec,
              const Rational& max_norm, const std::string& out_path,
              const std::string& cache_dir, std::ostream& out) {
    Timer timer;
    Fixture fx = load_fixture(fixture_path);
    PolynomialP v = parse_v_spec(fx.cusp, v_spec);
    std::optional<EnumCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);

    ThetaExpansion th;
    try {
        th = build_theta(fx.cusp, v, max_norm);
    } catch (const std::invalid_argument& e) {
        throw CommandError(e.what());
    }

    out << "command theta\n";
    out << "fixture " << fixture_path << "\n";
    out << "v " << v_spec << "\n";
    out << "max-norm " << rat_str(max_norm) << "\n";
    out << "coefficients " << th.coeffs.size() << "\n";
    if (out_path.empty()) {
        out << "table stdout\n";
        out << theta_to_text(th);
    } else {
        std::ofstream f(out_path);
        if (!f) throw CommandError(out_path + ": cannot open output file");
        f << theta_to_text(th);
        out << "table " << out_path << "\n";
    }
    if (cache) {
        out << "cache-hits " << cache->hits() << "\n";
        out << "cache-misses " << cache->misses() << "\n";
    }
    out << "timing-ms " << timer.ms() << "\n";
    return 0;
}

int cmd_verify(const std::string& fixture_path, const std::string& suite, unsigned seed,
               long trials, long truncation, double tolerance, std::ostream& out) {
    Timer timer;
    Fixture fx = load_fixture(fixture_path);
    const CuspData& c = fx.cusp;
    const FieldSpec* F = c.L->field();
    std::mt19937 rng(seed);

    out << "command verify\n";
    out << "fixture " << fixture_path << "\n";
    out << "suite " << suite << "\n";
    out << "seed " << seed << "\n";

    bool pass = true;
    if (suite == "cocycle") {
        HeisenbergParams hp = fixture_params(fx);
        KVector lam = pick_lambda(c);
        long n = trials > 0 ? trials : 1000;
        std::uniform_int_distribution<int> di(-3, 3);
        auto rand_elem = [&] {
            KVector t = c.D_part->zero();
            for (auto& b : hp.D_sub_basis) {
                Rational k(di(rng));
                for (size_t i = 0; i < t.size(); ++i) t[i] += b[i] * k;
            }
            return HeisenbergElem{hp.N * di(rng), t};
        };
        long failures = 0;
        for (long i = 0; i < n; ++i) {
            HeisenbergElem g1 = rand_elem(), g2 = rand_elem(), g3 = rand_elem();
            Rational bound = chern_cocycle(c, lam, g2, g3) -
                             chern_cocycle(c, lam, heisenberg_compose(c, g1, g2), g3) +
                             chern_cocycle(c, lam, g1, heisenberg_compose(c, g2, g3)) -
                             chern_cocycle(c, lam, g1, g2);
            if (bound != 0) ++failures;
        }
        out << "trials " << n << "\n";
        out << "failures " << failures << "\n";
        pass = failures == 0;
    } else if (suite == "automorphy") {
        HeisenbergParams hp = fixture_params(fx);
        KVector lam = pick_lambda(c);
        long n = trials > 0 ? trials : 20;
        long T = truncation > 0 ? truncation : 40;
        double tol = tolerance > 0 ? tolerance : 1e-8;
        std::uniform_int_distribution<int> di(-2, 2);
        std::uniform_real_distribution<double> dr(-0.4, 0.4);
        double max_dev = 0.0, max_zeta_dev = 0.0;
        long done = 0;
        for (long attempt = 0; attempt < 20 * n && done < n; ++attempt) {
            KVector t = c.D_part->zero();
            for (auto& b : hp.D_sub_basis) {
                Rational k(di(rng));
                for (size_t i = 0; i < t.size(); ++i) t[i] += b[i] * k;
            }
            HeisenbergElem g{0, t};
            SiegelPoint p;
            p.tau = {dr(rng), 1.6 + dr(rng)};
            p.sigma.assign(c.D_part->rank(), 0.0);
            for (auto& s : p.sigma) s = {0.3 * dr(rng), 0.3 * dr(rng)};
            auto num = eval_local_product(c, lam, heisenberg_act(c, g, p), T);
            auto den = eval_local_product(c, lam, p, T);
            if (num.divisor_hit || den.divisor_hit) continue;
            std::complex<double> J = automorphy_factor(c, lam, g, p);
            max_dev = std::max(max_dev, std::abs(num.value / den.value / J - 1.0));
            max_zeta_dev =
                std::max(max_zeta_dev, std::abs(J / automorphy_factor(c, lam, g, p, 2) - 1.0));
            ++done;
        }
        out << "trials " << done << "\n";
        out << "truncation " << T << "\n";
        out << "max-deviation " << max_dev << "\n";
        out << "max-zeta-deviation " << max_zeta_dev << "\n";
        pass = done == n && max_dev <= tol && max_zeta_dev <= 1e-12;
    } else if (suite == "weil") {
        WeilRep rep = build_weil_rep(*c.D_part);
        auto S = rep.s_matrix();
        auto Td = rep.t_matrix_diag();
        size_t d = rep.dim;
        auto mul = [&](const auto& A, const auto& B) {
            std::vector<std::vector<std::complex<double>>> C(
                d, std::vector<std::complex<double>>(d, 0.0));
            for (size_t i = 0; i < d; ++i)
                for (size_t k = 0; k < d; ++k)
                    for (size_t j = 0; j < d; ++j) C[i][j] += A[i][k] * B[k][j];
            return C;
        };
        std::vector<std::vector<std::complex<double>>> ST(
            d, std::vector<std::complex<double>>(d));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) ST[i][j] = S[i][j] * Td[j];
        auto S2 = mul(S, S);
        auto braid = mul(ST, mul(ST, ST));
        double unit_dev = 0.0, braid_dev = 0.0;
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                std::complex<double> acc = 0.0;
                for (size_t k = 0; k < d; ++k) acc += S[i][k] * std::conj(S[j][k]);
                unit_dev = std::max(unit_dev, std::abs(acc - (i == j ? 1.0 : 0.0)));
                braid_dev = std::max(braid_dev, std::abs(S2[i][j] - braid[i][j]));
            }
        double unit_tol = tolerance > 0 ? tolerance : 1e-12;
        double braid_tol = tolerance > 0 ? tolerance : 1e-10;
        out << "dim " << d << "\n";
        out << "weight " << rep.weight << "\n";
        out << "unitarity-deviation " << unit_dev << "\n";
        out << "braid-deviation " << braid_dev << "\n";
        pass = unit_dev <= unit_tol && braid_dev <= braid_tol;
    } else if (suite == "theta-modularity") {
        WeilRep rep = build_weil_rep(*c.D_part);
        Rational max_norm(truncation > 0 ? truncation : 25);
        double tol = tolerance > 0 ? tolerance : 1e-6;
        double max_dev = 0.0;
        for (auto& v : spanning_set(c)) {
            ThetaExpansion th = build_theta(c, v, max_norm);
            max_dev = std::max(max_dev, theta_modularity_check(c, rep, th, {0.0, 1.0}));
        }
        out << "max-norm " << rat_str(max_norm) << "\n";
        out << "max-deviation " << max_dev << "\n";
        pass = max_dev <= tol;
    } else if (suite == "cochain") {
        size_t r = c.D_part->rank();
        long n = trials > 0 ? trials : 3;
        double tol = tolerance > 0 ? tolerance : 1e-9;
        std::uniform_int_distribution<int> di(-2, 2);
        long failures = 0;
        for (long i = 0; i < n; ++i) {
            KMatrix herm(r, KVector(r, FieldElem(F, 0, 0)));
            KMatrix sym(r, KVector(r, FieldElem(F, 0, 0)));
            for (size_t a = 0; a < r; ++a) {
                herm[a][a] = FieldElem(F, di(rng), 0);
                sym[a][a] = FieldElem(F, di(rng), di(rng));
                for (size_t b = a + 1; b < r; ++b) {
                    herm[a][b] = FieldElem(F, di(rng), di(rng));
                    herm[b][a] = herm[a][b].conj();
                    sym[a][b] = FieldElem(F, di(rng), di(rng));
                    sym[b][a] = sym[a][b];
                }
            }
            if (!trivializing_cochain_check(c, CochainKind::Hermitian, herm, 8, seed + i, tol))
                ++failures;
            if (!trivializing_cochain_check(c, CochainKind::Symmetric, sym, 8, seed + i, tol))
                ++failures;
        }
        out << "trials " << n << "\n";
        out << "failures " << failures << "\n";
        pass = failures == 0;
    } else {
        throw CommandError("unknown suite '" + suite + "'");
    }

    out << "status " << (pass ? "pass" : "fail") << "\n";
    out << "timing-ms " << timer.ms() << "\n";
    return pass ? 0 : 1;
}

}  // namespace heegner
