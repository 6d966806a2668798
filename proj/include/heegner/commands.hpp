#ifndef HEEGNER_COMMANDS_HPP
#define HEEGNER_COMMANDS_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "heegner/weil_theta.hpp"

namespace heegner {

/// Input/usage failure: commands translate it to exit code 2.  Messages for
/// file problems are line-anchored ("path:line: what").
struct CommandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed fixture: the cusp plus optional Heisenberg overrides from the file.
struct Fixture {
    std::string path;
    CuspData cusp;
    std::optional<HeisenbergParams> params_override;
};

/// Line-oriented fixture format ('#' comments allowed):
///   field <disc>
///   rank <r>
///   gram <e_1> ; ... ; <e_r>        (r rows, entries a+b*zeta)
///   ell <e_1> ; ... ; <e_r>
///   ellp <e_1> ; ... ; <e_r>
///   N <rational>                    (optional, with dsub)
///   dsub <e_1> ; ... ; <e_n>        (optional, 2n rows, D-part coordinates)
Fixture load_fixture(const std::string& path);

/// Heisenberg parameters of the fixture: the override when present, otherwise
/// derived from the cusp.
HeisenbergParams fixture_params(const Fixture& fx);

/// Divisor combination format: lines "term <beta-index> <m> <coeff>".
/// Validated against the cusp (script-L membership, congruence, symmetry).
HeegnerCombo load_divisor(const Fixture& fx, const std::string& path);

/// Directory-backed enumeration cache, one text file per (lattice hash,
/// gamma, m), installed as the process-wide enumeration hook for its
/// lifetime.  Writes are atomic (temp file + rename).
class EnumCache {
public:
    explicit EnumCache(std::string dir);
    ~EnumCache();
    EnumCache(const EnumCache&) = delete;
    EnumCache& operator=(const EnumCache&) = delete;

    size_t hits() const { return hits_; }
    size_t misses() const { return misses_; }

private:
    std::string dir_;
    size_t hits_{0}, misses_{0};
};

enum class TorsionRoute { Bilinear, Theta, Both };

/// Exit codes across all commands: 0 ok / verdict true, 1 verdict false,
/// 2 input error, 3 internal consistency alarm.  The CLI maps CommandError
/// to 2 and std::logic_error to 3; the in-process entry points below return
/// codes for verdicts and throw for errors.
int cmd_lattice_info(const std::string& fixture_path, std::ostream& out);

int cmd_enumerate(const std::string& fixture_path, size_t gamma_index,
                  const Rational& m, bool count_only, const std::string& cache_dir,
                  std::ostream& out);

/// inject_fault corrupts the bilinear route's verdict; it exists only so the
/// route-disagreement alarm (exit 3) is testable.
int cmd_torsion(const std::string& fixture_path, const std::string& divisor_path,
                TorsionRoute route, const std::string& cache_dir, std::ostream& out,
                bool inject_fault = false);

/// v_spec: "0", or '+'-joined terms "f<k>" / "i*f<k>", e.g. "f1+i*f2".
/// Empty out_path sends the coefficient table to the report stream.
int cmd_theta(const std::string& fixture_path, const std::string& v_spec,
              const Rational& max_norm, const std::string& out_path,
              const std::string& cache_dir, std::ostream& out);

/// suite: cocycle | automorphy | weil | theta-modularity | cochain.
/// trials/truncation 0 and tolerance 0.0 select per-suite defaults.
int cmd_verify(const std::string& fixture_path, const std::string& suite,
               unsigned seed, long trials, long truncation, double tolerance,
               std::ostream& out);

}  // namespace heegner

#endif
