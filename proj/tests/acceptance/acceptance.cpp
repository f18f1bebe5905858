// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//
//   interfere_acceptance            run every criterion
//   interfere_acceptance 4 7        run only criteria 4 and 7

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "interfere/cli.hpp"
#include "interfere/coherence.hpp"
#include "interfere/density.hpp"
#include "interfere/interference.hpp"
#include "interfere/kernels.hpp"
#include "interfere/oracle.hpp"
#include "random_states.hpp"

using namespace interfere;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const fs::path kRoot = INTERFERE_SOURCE_DIR;

struct Outcome {
    bool pass;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// The family states shared by criteria 1 and 5.
std::vector<EmissionModel> suite1_models()
{
    std::mt19937_64 rng(20240101);
    std::vector<EmissionModel> models;
    for (int trial = 0; trial < 1000; ++trial)
        models.push_back(sample::random_model(rng, sample::uniform_index(rng, 2, 8), 0.05));
    return models;
}

Outcome equivalence_theorem()
{
    Stopwatch clock;
    double worst_g = 0.0, worst_consensus = 0.0;
    bool all_consistent = true;
    for (const EmissionModel& model : suite1_models()) {
        DensityMatrix rho = mix(model);
        const std::size_t n = rho.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    worst_g = std::max(worst_g, std::abs(std::abs(g1(rho, i, j)) - model.p_id()));
        PidReport pid = estimate_pid(rho);
        all_consistent = all_consistent && pid.consistent;
        if (pid.consensus)
            worst_consensus = std::max(worst_consensus, std::abs(*pid.consensus - model.p_id()));
    }
    double t = clock.seconds();
    bool pass = worst_g <= 1e-12 && worst_consensus <= 1e-12 && all_consistent && t <= 10.0;
    return {pass, "max||g1|-p_id|=" + fmt(worst_g) + " max|consensus-p_id|=" + fmt(worst_consensus) +
                      " (tol 1e-12), 1000 models, " + fmt(t) + " s (limit 10 s)"};
}

Outcome oracle_equivalence()
{
    Stopwatch clock;
    std::mt19937_64 rng(777);
    double worst_g1 = 0.0, worst_intensity = 0.0, worst_g2 = 0.0, worst_g3 = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = sample::uniform_index(rng, 2, 8);
        DensityMatrix rho = sample::random_density(rng, n);
        oracle::FockSpace space{rho.modes()};
        CMatrix full = oracle::embed(rho);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<oracle::ModeOperator> ops{space.creation(i), space.annihilation(j)};
                worst_g1 = std::max(worst_g1, std::abs(oracle::trace_correlation(full, ops) - big_g1(rho, i, j)));
                worst_g2 = std::max(worst_g2, std::abs(g2(rho, i, j)));
            }
        }
        const std::size_t a = sample::uniform_index(rng, 0, n - 1), b = sample::uniform_index(rng, 0, n - 1),
                          c = sample::uniform_index(rng, 0, n - 1);
        worst_g3 = std::max(worst_g3, std::abs(g3(rho, a, b, c)));
        PhaseConfig phases = sample::random_phases(rng, n, 20.0);
        worst_intensity =
            std::max(worst_intensity, std::abs(oracle::oracle_intensity(rho, phases) - intensity(rho, phases)));
    }
    double t = clock.seconds();
    bool pass = worst_g1 <= 1e-12 && worst_intensity <= 1e-12 && worst_g2 <= 1e-12 && worst_g3 <= 1e-12 && t <= 30.0;
    return {pass, "max dG1=" + fmt(worst_g1) + " max dI=" + fmt(worst_intensity) + " max|g2|=" + fmt(worst_g2) +
                      " max|g3|=" + fmt(worst_g3) + " (tol 1e-12), 1000 states, " + fmt(t) + " s (limit 30 s)"};
}

Outcome mandel_limit()
{
    // Equal populations, random relative phase and p_id.
    std::mt19937_64 rng(1963);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        CVector v(2);
        v << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), sample::uniform(rng, 0.0, 2.0 * kPi));
        DensityMatrix rho = mix(EmissionModel(Amplitudes(v), sample::uniform(rng)));
        VisibilityResult vis = visibility(rho);
        double g = std::abs(g1(rho, 0, 1));
        worst = std::max({worst, std::abs(vis.formula_v - g), std::abs(vis.scan_v - g)});
    }
    return {worst <= 1e-6, "max|V-|g1(1,2)||=" + fmt(worst) + " over formula and scan (tol 1e-6), 100 states"};
}

Outcome mandel_general()
{
    // Unequal populations: V = 2 sqrt(rho_11 rho_22) |g1(1,2)| for both readings.
    std::mt19937_64 rng(1964);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        DensityMatrix rho = mix(sample::random_model(rng, 2, 0.05));
        VisibilityResult vis = visibility(rho);
        double expected = 2.0 * std::sqrt(rho.population(0) * rho.population(1)) * std::abs(g1(rho, 0, 1));
        worst = std::max({worst, std::abs(vis.formula_v - expected), std::abs(vis.scan_v - expected)});
    }
    return {worst <= 1e-6, "max|V-2sqrt(rho11 rho22)|g1||=" + fmt(worst) + " (tol 1e-6), 100 unequal states"};
}

Outcome three_source_benchmark()
{
    Stopwatch clock;
    DensityMatrix rho = mix(EmissionModel(sample::equal_amplitudes(3), 1.0));
    VisibilityResult vis = visibility(rho);
    double t = clock.seconds();

    // Ground truth: at (0, 2pi/3, 4pi/3) the cosine sum is exactly -3/2.
    const double third = 2.0 * kPi / 3.0;
    double cos_sum = std::cos(third) + std::cos(2.0 * third) + std::cos(third);
    double at_truth = intensity(rho, PhaseConfig({0.0, third, 2.0 * third}));

    bool pass = std::abs(vis.formula_v - 2.0) <= 1e-12 && std::abs(vis.scan_v - 1.0) <= 1e-3 && vis.i_min <= 1e-6 &&
                std::abs(cos_sum + 1.5) <= 1e-12 && at_truth <= 1e-6 && t <= 5.0;
    return {pass, "formula_v=" + cli::format_double(vis.formula_v) + " (2 +/- 1e-12) scan_v=" + fmt(vis.scan_v) +
                      " (1 +/- 1e-3) i_min=" + fmt(vis.i_min) + " (<= 1e-6) I(0,2pi/3,4pi/3)=" + fmt(at_truth) +
                      ", " + fmt(t) + " s (limit 5 s)"};
}

Outcome bound_chain()
{
    ScanSettings cheap;  // only formula_v, sum_g and bound are under test
    cheap.grid_points = 8;
    cheap.starts = 2;
    std::size_t violations = 0;
    double tightest = std::numeric_limits<double>::infinity();
    for (const EmissionModel& model : suite1_models()) {
        VisibilityResult vis = visibility(mix(model), cheap);
        double pairs = static_cast<double>(model.amplitudes().modes().pairs());
        bool ok = vis.formula_v <= vis.sum_g + 1e-12 && vis.sum_g <= pairs * model.p_id() + 1e-12 && vis.bound &&
                  vis.sum_g <= *vis.bound + 1e-12;
        violations += !ok;
        tightest = std::min(tightest, vis.sum_g - vis.formula_v);
    }
    return {violations == 0, std::to_string(violations) + " violations of formula_v <= sum|g1| <= C(N,2) p_id" +
                                 " (slack 1e-12), 1000 states; min(sum|g1| - formula_v)=" + fmt(tightest)};
}

Outcome born_rule()
{
    std::mt19937_64 rng(3141);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = sample::uniform_index(rng, 3, 8);
        DensityMatrix rho = sample::random_density(rng, n);
        worst = std::max(worst, std::abs(born_residual(rho, sample::random_phases(rng, n, 2.0 * kPi))));
    }
    return {worst <= 1e-12, "max|residual|=" + fmt(worst) + " (tol 1e-12), 1000 draws N in 3..8"};
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "<missing " + path.string() + ">";
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome golden_files()
{
    struct Case {
        std::vector<std::string> args;
        std::string golden;
        int expected_code;
    };
    const std::string data = (kRoot / "data").string() + "/";
    const std::string fixtures = (kRoot / "tests" / "fixtures").string() + "/";
    const std::vector<Case> cases = {
        {{"pattern", "--config", data + "two_source.json", "--x-min", "-0.1", "--x-max", "0.1", "--samples", "201"},
         "two_source_pattern.csv", 0},
        {{"pattern", "--config", data + "three_source.json", "--x-min", "-0.05", "--x-max", "0.05", "--samples",
          "1001"},
         "three_source_pattern.csv", 0},
        {{"pid", "--config", data + "three_source.json"}, "three_source_pid.json", 0},
        {{"pid", "--config", fixtures + "inconsistent_rho.json"}, "inconsistent_pid.json", 1},
        {{"visibility", "--config", data + "two_source.json"}, "two_source_visibility.json", 0},
        {{"visibility", "--config", data + "three_source.json"}, "three_source_visibility.json", 0},
        {{"visibility", "--config", data + "five_source_rho.json"}, "five_source_visibility.json", 0},
    };

    std::vector<std::string> mismatched;
    for (const Case& c : cases) {
        std::ostringstream out, err;
        int code = cli::run(c.args, out, err);
        if (code != c.expected_code || out.str() != slurp(kRoot / "tests" / "golden" / c.golden))
            mismatched.push_back(c.golden);
    }
    std::string detail = std::to_string(cases.size() - mismatched.size()) + "/" + std::to_string(cases.size()) +
                         " outputs byte-identical (isa " + std::string(kernels::name(kernels::active_isa())) + ")";
    for (const std::string& name : mismatched)
        detail += "; mismatch " + name;
    return {mismatched.empty(), detail};
}

Outcome structural_invariants()
{
    std::mt19937_64 rng(8080);
    std::size_t failures[4] = {0, 0, 0, 0};
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = sample::uniform_index(rng, 2, 8);

        // validate_density accepts mixtures and arbitrary states, rejects a
        // state pushed off unit trace.
        EmissionModel model = sample::random_model(rng, n, 0.0);
        DensityMatrix arbitrary = sample::random_density(rng, n);
        CMatrix off_trace = arbitrary.entries() * 1.01;
        failures[0] += !(validate_density(mix(model)).ok && validate_density(arbitrary).ok &&
                         !validate_density(off_trace).ok);

        // Global amplitude phase leaves every observable unchanged.
        Complex phase = std::polar(1.0, sample::uniform(rng, -kPi, kPi));
        DensityMatrix a = mix(model);
        DensityMatrix b = mix(EmissionModel(Amplitudes(model.amplitudes().values() * phase), model.p_id()));
        PhaseConfig phases = sample::random_phases(rng, n, 10.0);
        bool gauge = std::abs(intensity(a, phases) - intensity(b, phases)) <= 1e-12;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                gauge = gauge && std::abs(std::abs(a(i, j)) - std::abs(b(i, j))) <= 1e-12;
        failures[1] += !gauge;

        // Intensity non-negativity.
        failures[2] += !(intensity(arbitrary, phases) >= -1e-12);

        // Common phase shift.
        double shift = sample::uniform(rng, -50.0, 50.0);
        std::vector<double> moved = phases.phases();
        for (double& phi : moved)
            phi += shift;
        failures[3] += !(std::abs(intensity(arbitrary, PhaseConfig(moved)) - intensity(arbitrary, phases)) <= 1e-12);
    }
    bool pass = failures[0] + failures[1] + failures[2] + failures[3] == 0;
    return {pass, "failures/1000: validate=" + std::to_string(failures[0]) + " gauge=" + std::to_string(failures[1]) +
                      " non-negative=" + std::to_string(failures[2]) + " phase-shift=" + std::to_string(failures[3])};
}

}  // namespace

int main(int argc, char** argv)
{
    struct Criterion {
        int id;
        const char* label;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "AC1 equivalence |g1| = P_ID", equivalence_theorem},
        {2, "AC2 oracle equivalence", oracle_equivalence},
        {3, "AC3 N=2 Mandel limit", mandel_limit},
        {3, "AC3 N=2 unequal populations", mandel_general},
        {4, "AC4 N=3 equal amplitudes, p_id=1", three_source_benchmark},
        {5, "AC5 bound chain", bound_chain},
        {6, "AC6 Born residual", born_rule},
        {7, "AC7 CLI golden files", golden_files},
        {8, "AC8 structural invariants", structural_invariants},
    };

    std::set<int> only;
    for (int k = 1; k < argc; ++k)
        only.insert(std::stoi(argv[k]));

    int failed = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && !only.count(c.id))
            continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.label << ": " << o.detail << std::endl;
        failed += !o.pass;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all passed")
              << std::endl;
    return failed ? 1 : 0;
}
