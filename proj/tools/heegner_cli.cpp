#include <CLI11.hpp>
#include <iostream>

#include "heegner/commands.hpp"

using namespace heegner;

int main(int argc, char** argv) {
    CLI::App app{"Exact torsion tests for combinations of local Heegner divisors"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string cache_dir;
    app.add_option("--cache-dir", cache_dir, "directory for the enumeration cache");

    std::string fixture, divisor, route = "both", v_spec = "f1", out_path, suite;
    long gamma_index = 0;
    std::string m_text = "-1", max_norm_text = "5";
    bool count_only = false, inject_fault = false;
    unsigned seed = 1;
    long trials = 0, truncation = 0;
    double tolerance = 0.0;

    auto* info = app.add_subcommand("lattice-info", "print lattice and cusp invariants");
    info->add_option("fixture", fixture, "fixture file")->required();

    auto* enumerate = app.add_subcommand("enumerate", "list vectors of a coset with given norm");
    enumerate->add_option("fixture", fixture, "fixture file")->required();
    enumerate->add_option("--gamma", gamma_index, "coset index in D'/D");
    enumerate->add_option("--m", m_text, "negative norm (rational)");
    enumerate->add_flag("--count-only", count_only, "report the count without the vectors");

    auto* torsion = app.add_subcommand("torsion", "decide torsion of a divisor combination");
    torsion->add_option("fixture", fixture, "fixture file")->required();
    torsion->add_option("divisor", divisor, "divisor combination file")->required();
    torsion->add_option("--route", route, "bilinear | theta | both")
        ->check(CLI::IsMember({"bilinear", "theta", "both"}));
    torsion->add_flag("--inject-route-fault", inject_fault,
                      "corrupt the bilinear route (tests the disagreement alarm)")
        ->group("");

    auto* theta = app.add_subcommand("theta", "export theta coefficients for a polarization");
    theta->add_option("fixture", fixture, "fixture file")->required();
    theta->add_option("--v", v_spec, "polarization, e.g. f1 or f1+i*f2");
    theta->add_option("--max-norm", max_norm_text, "largest coefficient index");
    theta->add_option("--out", out_path, "output table path (default: stdout)");

    auto* verify = app.add_subcommand("verify", "run a randomized property suite");
    verify->add_option("fixture", fixture, "fixture file")->required();
    verify->add_option("suite", suite, "cocycle | automorphy | weil | theta-modularity | cochain")
        ->required();
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--trials", trials, "number of trials (0 = suite default)");
    verify->add_option("--truncation", truncation, "truncation / max norm (0 = suite default)");
    verify->add_option("--tolerance", tolerance, "tolerance override (0 = suite default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return cmd_lattice_info(fixture, std::cout);
        if (enumerate->parsed())
            return cmd_enumerate(fixture, static_cast<size_t>(gamma_index), rat_parse(m_text),
                                 count_only, cache_dir, std::cout);
        if (torsion->parsed()) {
            TorsionRoute r = route == "bilinear" ? TorsionRoute::Bilinear
                             : route == "theta" ? TorsionRoute::Theta
                                                : TorsionRoute::Both;
            return cmd_torsion(fixture, divisor, r, cache_dir, std::cout, inject_fault);
        }
        if (theta->parsed())
            return cmd_theta(fixture, v_spec, rat_parse(max_norm_text), out_path, cache_dir,
                             std::cout);
        if (verify->parsed())
            return cmd_verify(fixture, suite, seed, trials, truncation, tolerance, std::cout);
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal consistency alarm: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
