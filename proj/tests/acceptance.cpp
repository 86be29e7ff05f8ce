// Acceptance gate: twelve end-to-end criteria covering the spectrum, state
// preparation, revival, validity and reporting behaviour of the library and
// the becsim tool.  Each criterion prints one [PASS]/[FAIL] line; the exit
// code is the number of failures.  Tolerances are pinned here, next to the
// checks they gate.

#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bec/dynamics.hpp"
#include "bec/entanglement.hpp"
#include "bec/fock.hpp"
#include "bec/hamiltonians.hpp"
#include "bec/revivals.hpp"
#include "bec/states.hpp"

namespace {

using namespace bec;

constexpr double kPi = std::numbers::pi;

// Pinned gates.
constexpr double kSpectrumTol = 1e-10;        // operator vs closed-form energies
constexpr double kRepFidelityFloor = 1e-8;    // 1 - F for the frame identities
constexpr double kGaussExactTol = 1e-12;      // coefficient values and norms
constexpr double kSynthesisTol = 5e-12;       // phase-synthesis identity
constexpr double kRevivalFloor = 1e-8;        // 1 - F at the revival times
constexpr double kBareRouteFloor = 1e-10;     // 1 - F, bare-frame target route
constexpr double kLiteralCap = 0.999;         // literal convention must miss this
constexpr double kImprovementFactor = 100.0;  // q: 0.1 -> 0.001 infidelity drop
constexpr double kAdiabaticFloor = 0.99;      // fidelity at the largest detuning
constexpr double kMidCap = 1e-3;              // mid-level population at same
constexpr double kOracleFidelityTol = 1e-6;   // match to the frozen fidelities
constexpr double kDriftTol = 1e-10;           // norm and sector-weight drift
constexpr double kEntropyTol = 1e-8;          // entropy/purity vs closed form
constexpr double kInvarianceTol = 1e-9;       // entropy constancy under phases
constexpr double kDecomposeTol = 1e-8;        // coefficients and residual

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string fix(double x, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

void run(int number, const std::string& title, const std::function<Outcome()>& body,
         int& failures) {
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %2d: %s -- %s\n", out.pass ? "PASS" : "FAIL", number,
                title.c_str(), out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
}

// --- criterion 1: diagonal rotating-wave operator vs closed-form energies ---

Outcome spectrum_closed_form() {
    const FockBasis basis = FockBasis::two_mode(20);
    std::mt19937 rng(20250816);
    std::uniform_real_distribution<double> gdist(-1.0, 1.0);
    std::uniform_real_distribution<double> qdist(0.0, 0.2);

    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const EffectiveParams p{gdist(rng), qdist(rng), qdist(rng)};
        const LinearOperator h = build_rwa(p, basis);
        for (int n = 0; n <= 20; ++n) {
            for (int m = 0; n + m <= 20; ++m) {
                const Eigen::Index idx = basis.encode({n, m});
                const double diff = std::abs(h.matrix()(idx, idx).real() - eigenvalue(n, m, p));
                worst = std::max(worst, diff);
            }
        }
    }
    return {worst <= kSpectrumTol,
            "max |operator - formula| = " + sci(worst) + " over 100 random parameter draws"};
}

// --- criterion 2: frame-change representation identities ---

Outcome rep_relations() {
    const FockBasis basis = FockBasis::two_mode(48);
    double min_f = 1.0;
    for (const double r : {0.25, 0.5, 0.75}) {
        const RepRelationFidelities f = check_rep_relations(SqueezingParam(r, 0.0), basis);
        min_f = std::min({min_f, f.f1, f.f2, f.f3});
    }
    return {min_f >= 1.0 - kRepFidelityFloor,
            "min fidelity over the three identities and r in {0.25, 0.5, 0.75} is " +
                fix(min_f, 12)};
}

// --- criterion 3: gauss coefficients and the synthesis identity ---

double synthesis_error(const Eigen::VectorXcd& c, int branches, int step) {
    double worst = 0.0;
    for (int n = 0; n < 2 * branches; ++n) {
        Complex sum{0.0, 0.0};
        for (int r = 0; r < 2 * branches; ++r) {
            sum += c(r) * std::exp(Complex(0.0, kPi * n * r / branches));
        }
        const Complex rhs = std::exp(Complex(0.0, -kPi * step * n * (n - 3) / branches));
        worst = std::max(worst, std::abs(sum - rhs));
    }
    return worst;
}

Outcome gauss_sums() {
    // Half revival: exactly two branches.
    const Eigen::VectorXcd c2 = gauss_coefficients(2, 1);
    const std::vector<Complex> expected2 = {
        {0.0, 0.0}, {0.5, 0.5}, {0.0, 0.0}, {0.5, -0.5}};
    double worst2 = 0.0;
    for (int r = 0; r < 4; ++r) worst2 = std::max(worst2, std::abs(c2(r) - expected2[r]));

    // Unit norm and synthesis for every coprime pair up to 12 branches.
    double worst_norm = 0.0;
    double worst_synth = 0.0;
    for (int n = 1; n <= 12; ++n) {
        for (int m = 1; m <= n; ++m) {
            if (std::gcd(n, m) != 1) continue;
            const Eigen::VectorXcd c = gauss_coefficients(n, m);
            worst_norm = std::max(worst_norm, std::abs(c.norm() - 1.0));
            worst_synth = std::max(worst_synth, synthesis_error(c, n, m));
        }
    }

    // Quarter revival: direct values, and the conjugate relabeling that
    // reproduces a commonly quoted alternative table.  The alternative values
    // do not satisfy the synthesis identity; the direct ones do.
    const Eigen::VectorXcd c4 = gauss_coefficients(4, 1);
    const Complex eighth = std::polar(0.5, -kPi / 4.0);
    const std::vector<Complex> expected4 = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}, eighth,
                                            {0.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}, -eighth};
    double worst4 = 0.0;
    for (int r = 0; r < 8; ++r) worst4 = std::max(worst4, std::abs(c4(r) - expected4[r]));

    Eigen::VectorXcd alt(8);
    for (int r = 0; r < 8; ++r) alt(r) = std::conj(c4((r + 1) % 8));
    const double alt_synth = synthesis_error(alt, 4, 1);

    const bool pass = worst2 <= kGaussExactTol && worst_norm <= kGaussExactTol &&
                      worst_synth <= kSynthesisTol && worst4 <= kGaussExactTol &&
                      alt_synth > 0.1;
    return {pass, "coefficient error " + sci(std::max(worst2, worst4)) + ", norm error " +
                      sci(worst_norm) + ", synthesis error " + sci(worst_synth) +
                      " (all coprime pairs, 12 branches max); the conj(c[r+1]) relabeling "
                      "misses synthesis by " +
                      fix(alt_synth, 3)};
}

// --- criteria 4-6: fractional revivals on the derived resonance ---

struct RevivalLab {
    FockBasis basis = FockBasis::two_mode(48);
    SqueezingParam xi{0.5, 0.0};
    double q = 0.1;
    EffectiveParams derived = resonant_params(0.1, ResonanceConvention::derived);
    EffectiveParams literal = resonant_params(0.1, ResonanceConvention::literal);
    QuantumState psi0;

    RevivalLab() : psi0(two_mode_squeezed_vacuum(SqueezingParam(0.5, kPi / 2.0), basis)) {}

    double fidelity_at(const EffectiveParams& p, int branches, int step) const {
        const RevivalSpec spec(branches, step, xi);
        const double t = spec.tau() / (7.0 * q);
        const QuantumState evolved = evolve_rwa(p, psi0, t);
        const QuantumState target = target_superposition(spec, basis, Representation::rotated);
        return fidelity(evolved, target);
    }
};

Outcome revival_targets(const RevivalLab& lab) {
    const double f_half = lab.fidelity_at(lab.derived, 2, 1);
    const double f_quarter = lab.fidelity_at(lab.derived, 4, 1);

    // Bare-frame route: the same half-revival target assembled directly from
    // squeezed products, against the frame-changed rotated target.
    const RevivalSpec spec(2, 1, lab.xi);
    const QuantumState target_bare =
        target_superposition(spec, lab.basis, Representation::bare);
    const Eigen::VectorXcd c = gauss_coefficients(2, 1);
    const FockBasis single = FockBasis::single_mode(lab.basis.cutoff());
    Vector acc = Vector::Zero(lab.basis.dimension());
    for (int r = 0; r < 4; ++r) {
        const SqueezingParam xi_r = lab.xi.rotated(kPi * r / 2.0);
        const QuantumState branch =
            product_state(squeezed_vacuum(xi_r, single), squeezed_vacuum(xi_r.negated(), single));
        acc += c(r) * branch.amplitudes();
    }
    const QuantumState direct = QuantumState(lab.basis, std::move(acc)).normalized();
    const double f_bare = fidelity(direct, target_bare);

    const bool pass = f_half >= 1.0 - kRevivalFloor && f_quarter >= 1.0 - kRevivalFloor &&
                      f_bare >= 1.0 - kBareRouteFloor;
    return {pass, "half revival F = " + fix(f_half, 12) + ", quarter revival F = " +
                      fix(f_quarter, 12) + ", bare-frame route F = " + fix(f_bare, 12)};
}

Outcome literal_convention(const RevivalLab& lab) {
    const double lit_half = lab.fidelity_at(lab.literal, 2, 1);
    const double lit_quarter = lab.fidelity_at(lab.literal, 4, 1);
    const double der_half = lab.fidelity_at(lab.derived, 2, 1);
    const double der_quarter = lab.fidelity_at(lab.derived, 4, 1);

    // Frozen reference values for the literal convention at this squeezing.
    const bool near_frozen =
        std::abs(lit_half - 0.982981) <= 1e-3 && std::abs(lit_quarter - 0.995677) <= 1e-3;
    const bool pass = lit_half < der_half && lit_quarter < der_quarter &&
                      lit_half <= kLiteralCap && lit_quarter <= kLiteralCap && near_frozen;
    return {pass,
            "g = -19q/4 (phase ratio 22/7) reaches F = " + fix(lit_half) + " / " +
                fix(lit_quarter) + " where g = -9q/2 (phase ratio 3) reaches " + fix(der_half) +
                " / " + fix(der_quarter)};
}

Outcome full_revival(const RevivalLab& lab) {
    const double t = 2.0 * kPi / (7.0 * lab.q);
    const QuantumState evolved = evolve_rwa(lab.derived, lab.psi0, t);
    const double f = fidelity(evolved, lab.psi0);
    return {f >= 1.0 - kRevivalFloor,
            "F(psi(2 pi / 7q), psi(0)) = " + fix(f, 14)};
}

// --- criterion 7: rotating-wave accuracy scales with the collision strength ---

Outcome rwa_scaling() {
    const FockBasis single = FockBasis::single_mode(24);
    const QuantumState seed = squeezed_vacuum(SqueezingParam(0.5, 0.0), single);
    const QuantumState psi0 = product_state(seed, seed);

    const std::vector<double> qs = {0.1, 0.01, 0.001};
    const std::vector<double> expected = {2.766831e-4, 2.640550e-6, 2.803968e-8};
    const std::vector<double> rel_tol = {0.05, 0.05, 0.15};

    std::vector<double> infidelity;
    bool near = true;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const EffectiveParams p{-1.0, qs[i], qs[i] / 2.0};
        infidelity.push_back(1.0 - rwa_fidelity(p, psi0, 1.0));
        near = near && std::abs(infidelity[i] - expected[i]) <= rel_tol[i] * expected[i];
    }
    const bool decreasing = infidelity[0] > infidelity[1] && infidelity[1] > infidelity[2];
    const bool strong_drop = infidelity[2] < infidelity[0] / kImprovementFactor;
    return {decreasing && strong_drop && near,
            "1 - F = " + sci(infidelity[0]) + " / " + sci(infidelity[1]) + " / " +
                sci(infidelity[2]) + " for q = 0.1 / 0.01 / 0.001 at t = 1"};
}

// --- criterion 8: adiabatic elimination converges with detuning ---

QuantumState truncated_pair_state() {
    const FockBasis basis = FockBasis::two_mode(6);
    QuantumState state = two_mode_squeezed_vacuum(SqueezingParam(0.4, 0.0), basis, 1e-3);
    Vector amps = state.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        if (basis.occupation(i, 1) > 3) amps(i) = Complex(0.0, 0.0);
    }
    return QuantumState(basis, std::move(amps)).normalized();
}

Outcome adiabatic_convergence() {
    const QuantumState psi0 = truncated_pair_state();
    RamanParams p;
    p.g1 = Complex(1.0, 0.0);
    p.g2 = Complex(1.0, 0.0);
    p.lambda1 = p.lambda2 = p.lambda3 = 2.5e-4;
    p.lambda12 = p.lambda13 = p.lambda23 = 1e-4;

    std::vector<AdiabaticResult> results;
    for (const double ratio : {20.0, 200.0}) {
        p.delta1 = p.delta2 = ratio;
        results.push_back(adiabatic_fidelity(p, psi0, ratio, 21, 6));
    }

    const bool frozen = std::abs(results[0].fidelity - 0.99783335) <= kOracleFidelityTol &&
                        std::abs(results[1].fidelity - 0.99999039) <= kOracleFidelityTol;
    const bool gates = results[1].fidelity >= kAdiabaticFloor &&
                       results[1].max_mid_population <= kMidCap &&
                       results[1].fidelity > results[0].fidelity &&
                       results[1].max_mid_population < results[0].max_mid_population;
    return {frozen && gates,
            "detuning ratio 20: F = " + fix(results[0].fidelity, 8) + ", max <n2> = " +
                sci(results[0].max_mid_population) + "; ratio 200: F = " +
                fix(results[1].fidelity, 8) + ", max <n2> = " +
                sci(results[1].max_mid_population)};
}

// --- criterion 9: conserved norm and sector weights along every evolution ---

std::map<int, double> sector_weights(const QuantumState& state) {
    std::map<int, double> weights;
    for (const SectorComponent& s : sector_split(state).sectors) {
        weights[s.total_number] = s.weight;
    }
    return weights;
}

double sector_drift(const std::map<int, double>& a, const std::map<int, double>& b) {
    double worst = 0.0;
    auto lookup = [](const std::map<int, double>& m, int key) {
        const auto it = m.find(key);
        return it == m.end() ? 0.0 : it->second;
    };
    for (const auto& [key, value] : a) worst = std::max(worst, std::abs(value - lookup(b, key)));
    for (const auto& [key, value] : b) worst = std::max(worst, std::abs(value - lookup(a, key)));
    return worst;
}

Outcome conservation_laws() {
    double worst_norm = 0.0;
    double worst_sector = 0.0;

    // Rotating-wave evolution of the pair-squeezed revival seed.
    {
        const FockBasis basis = FockBasis::two_mode(30);
        const EffectiveParams p = resonant_params(0.1, ResonanceConvention::derived);
        const QuantumState psi0 =
            two_mode_squeezed_vacuum(SqueezingParam(0.5, kPi / 2.0), basis);
        const std::map<int, double> w0 = sector_weights(psi0);
        for (const double tau : {kPi / 2.0, kPi, 3.0 * kPi / 2.0, 2.0 * kPi}) {
            const QuantumState evolved = evolve_rwa(p, psi0, tau / 0.7);
            worst_norm = std::max(worst_norm, std::abs(evolved.norm_squared() - 1.0));
            worst_sector = std::max(worst_sector, sector_drift(w0, sector_weights(evolved)));
        }
    }

    // Exact effective evolution of a squeezed product.
    {
        const FockBasis basis = FockBasis::two_mode(24);
        const FockBasis single = FockBasis::single_mode(24);
        const QuantumState seed = squeezed_vacuum(SqueezingParam(0.5, 0.0), single);
        const QuantumState psi0 = product_state(seed, seed);
        const Propagator prop(build_effective(EffectiveParams{-1.0, 0.1, 0.05}, basis));
        const std::map<int, double> w0 = sector_weights(psi0);
        for (const double t : {0.25, 0.5, 0.75, 1.0}) {
            const QuantumState evolved = prop.evolve(psi0, t);
            worst_norm = std::max(worst_norm, std::abs(evolved.norm_squared() - 1.0));
            worst_sector = std::max(worst_sector, sector_drift(w0, sector_weights(evolved)));
        }
    }

    // Full three-level evolution inside one total-number sector.
    {
        RamanParams p;
        p.g1 = Complex(1.0, 0.0);
        p.g2 = Complex(1.0, 0.0);
        p.delta1 = p.delta2 = 200.0;
        p.lambda1 = p.lambda2 = p.lambda3 = 2.5e-4;
        p.lambda12 = p.lambda13 = p.lambda23 = 1e-4;
        const FockBasis sector = FockBasis::three_mode_sector(4);
        const QuantumState psi0 = QuantumState::basis_state(sector, {2, 0, 2});
        const Propagator prop(build_three_mode(p, 4));
        for (const double t : {5.0, 20.0}) {
            const QuantumState evolved = prop.evolve(psi0, t);
            worst_norm = std::max(worst_norm, std::abs(evolved.norm_squared() - 1.0));
        }
    }

    return {worst_norm <= kDriftTol && worst_sector <= kDriftTol,
            "max norm drift " + sci(worst_norm) + ", max sector-weight drift " +
                sci(worst_sector) + " across the three evolution routes"};
}

// --- criterion 10: entanglement entropy of the pair-squeezed state ---

Outcome entanglement_entropy() {
    const FockBasis basis = FockBasis::two_mode(48);
    const EffectiveParams p = resonant_params(0.1, ResonanceConvention::derived);
    double worst_entropy = 0.0;
    double worst_purity = 0.0;
    double worst_invariance = 0.0;

    for (const double s : {0.25, 0.5, 1.0}) {
        const QuantumState state = two_mode_squeezed_vacuum(SqueezingParam(s, 0.0), basis);
        const double ch2 = std::cosh(s) * std::cosh(s);
        const double sh2 = std::sinh(s) * std::sinh(s);
        const double closed_entropy = ch2 * std::log(ch2) - sh2 * std::log(sh2);
        const double closed_purity = 1.0 / std::cosh(2.0 * s);

        const DensityMatrix rho = reduced_density(state, 1);
        const double measured = entropy(rho);
        worst_entropy = std::max(worst_entropy, std::abs(measured - closed_entropy));
        worst_purity = std::max(worst_purity, std::abs(purity(rho) - closed_purity));

        for (const double t : {0.3, 1.7}) {
            const QuantumState evolved = evolve_rwa(p, state, t);
            const double after = entropy(reduced_density(evolved, 1));
            worst_invariance = std::max(worst_invariance, std::abs(after - measured));
        }
    }
    return {worst_entropy <= kEntropyTol && worst_purity <= kEntropyTol &&
                worst_invariance <= kInvarianceTol,
            "entropy error " + sci(worst_entropy) + ", purity error " + sci(worst_purity) +
                ", drift under diagonal evolution " + sci(worst_invariance)};
}

// --- criterion 11: target superpositions decompose back into gauss weights ---

Outcome decomposition_roundtrip() {
    const FockBasis basis = FockBasis::two_mode(40);
    const SqueezingParam xi(0.5, 0.0);
    double worst_coeff = 0.0;
    double worst_residual = 0.0;

    const std::vector<std::pair<int, int>> cases = {{2, 1}, {3, 1}, {4, 1}, {4, 3}};
    for (const auto& [branches, step] : cases) {
        const RevivalSpec spec(branches, step, xi);
        const QuantumState target =
            target_superposition(spec, basis, Representation::rotated);
        const DecompositionResult d = decompose(target, branches, xi);
        const Eigen::VectorXcd c = gauss_coefficients(branches, step);
        worst_coeff = std::max(worst_coeff, (d.coefficients - c).cwiseAbs().maxCoeff());
        worst_residual = std::max(worst_residual, d.residual);
    }
    return {worst_coeff <= kDecomposeTol && worst_residual <= kDecomposeTol,
            "max coefficient error " + sci(worst_coeff) + ", max residual " +
                sci(worst_residual) + " over four branch/step pairs"};
}

// --- criterion 12: the command-line tool is deterministic ---

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome cli_determinism() {
    const std::string tool = BECSIM_CLI_PATH;
    const std::filesystem::path root = "acceptance_cli_runs";
    std::filesystem::remove_all(root);

    std::string notes;
    bool pass = true;
    for (const std::string sub : {"spectrum", "evolve", "revival", "adiabatic", "validity"}) {
        std::vector<std::string> csv, json;
        for (const std::string tag : {"a", "b"}) {
            const std::filesystem::path out = root / (sub + "_" + tag);
            const std::string cmd = "\"" + tool + "\" " + sub + " --quiet --out \"" +
                                    out.string() + "\" > /dev/null 2>&1";
            const int raw = std::system(cmd.c_str());
            const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
            if (code != 0) {
                pass = false;
                notes += " " + sub + ": exit " + std::to_string(code) + ";";
            }
            csv.push_back(slurp(out / (sub + ".csv")));
            json.push_back(slurp(out / (sub + ".json")));
        }
        if (csv[0].empty() || csv[0] != csv[1] || json[0].empty() || json[0] != json[1]) {
            pass = false;
            notes += " " + sub + ": outputs differ between runs;";
        }
    }
    if (notes.empty()) notes = " all five subcommands exit 0 with byte-identical outputs";
    return {pass, "repeated default runs:" + notes};
}

}  // namespace

int main() {
    int failures = 0;

    run(1, "diagonal form reproduces the closed-form spectrum", spectrum_closed_form, failures);
    run(2, "frame-change representation identities hold", rep_relations, failures);
    run(3, "gauss coefficients satisfy the synthesis identity", gauss_sums, failures);

    const RevivalLab lab;
    run(4, "fractional revivals land on the target superpositions",
        [&lab] { return revival_targets(lab); }, failures);
    run(5, "literal resonance convention falls measurably short",
        [&lab] { return literal_convention(lab); }, failures);
    run(6, "the evolution closes a full revival at tau = 2 pi",
        [&lab] { return full_revival(lab); }, failures);

    run(7, "rotating-wave error scales away with the collision strength", rwa_scaling, failures);
    run(8, "adiabatic elimination converges with detuning", adiabatic_convergence, failures);
    run(9, "norm and sector weights are conserved along evolutions", conservation_laws,
        failures);
    run(10, "pair-squeezed entanglement entropy matches the closed form", entanglement_entropy,
        failures);
    run(11, "targets decompose back into gauss coefficients", decomposition_roundtrip, failures);
    run(12, "command-line runs are deterministic", cli_determinism, failures);

    if (failures == 0) {
        std::printf("acceptance: all 12 criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion%s failed\n", failures, failures == 1 ? "" : "s");
    }
    return failures;
}
