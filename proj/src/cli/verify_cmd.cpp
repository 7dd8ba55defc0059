#include <cmath>
#include <exception>
#include <functional>
#include <map>

#include "ergent/catalog.hpp"
#include "ergent/cli/commands.hpp"
#include "ergent/cli/io.hpp"
#include "ergent/locc.hpp"
#include "ergent/roof.hpp"

namespace ergent::cli {

namespace {

struct TrialLog {
    std::uint64_t checks = 0;
    std::vector<Violation> violations;

    void check(bool ok, std::uint64_t trial, std::string name, double lhs, double rhs, std::string detail = {}) {
        ++checks;
        if (!ok) violations.push_back({trial, std::move(name), lhs, rhs, std::move(detail)});
    }
};

using TrialFn = std::function<void(std::uint64_t trial, CounterRng& rng, TrialLog& log)>;

LocalHamiltonian random_ladders(const Register& reg, CounterRng& rng) {
    std::vector<std::vector<double>> e;
    for (int d : reg.dims()) {
        std::vector<double> lv{0.0};
        for (int j = 1; j < d; ++j) lv.push_back(lv.back() + rng.uniform(0.1, 1.5));
        e.push_back(std::move(lv));
    }
    return LocalHamiltonian(reg, std::move(e), false, "random");
}

SubsetChoice random_subset(int n, CounterRng& rng) {
    return SubsetChoice(PartitionMask(n, static_cast<std::uint32_t>(rng.integer(1, (1 << n) - 1))));
}

Register random_register(int n, CounterRng& rng) {
    std::vector<int> dims(static_cast<std::size_t>(n), 2);
    if (n == 2) {
        for (int& d : dims) d = rng.integer(2, 3);
    }
    return Register(dims);
}

std::string mask_detail(const PartitionMask& x) { return "cut=" + cut_label(x); }

void monotonicity_trial_fn(std::uint64_t t, CounterRng& rng, TrialLog& log) {
    const int n = 2 + static_cast<int>(t % 3);
    const Register reg = random_register(n, rng);
    const LocalHamiltonian h = (t / 3) % 2 == 0 ? LocalHamiltonian::equispaced(reg) : random_ladders(reg, rng);
    const PureState psi = random_state(reg, rng);
    const SubsetChoice s = random_subset(n, rng);
    const LoccTree tree = random_locc_tree(reg, rng.integer(1, kMaxLoccDepth), kMaxInstrumentOutcomes, rng);

    const auto avg = monotonicity_trial(psi, tree, s, h);
    log.check(avg.holds, t, "average", avg.after_avg, avg.before, "n=" + std::to_string(n));
    for (std::uint32_t bits = 1; bits + 1 < (1u << n); bits += 2) {
        const PartitionMask x(n, bits);
        const auto cut = cut_monotonicity_trial(psi, tree, x, h);
        log.check(cut.holds, t, "cut", cut.after_avg, cut.before, mask_detail(x));
    }
    // A product of single-outcome instruments is a local unitary.
    PureState rotated = psi;
    for (int p = 0; p < n; ++p) rotated = apply_instrument(rotated, random_instrument(p, reg.dim(p), 1, rng)).front().state;
    const double before = me_pure(psi, s, h, Exec::serial).value, after = me_pure(rotated, s, h, Exec::serial).value;
    log.check(std::abs(before - after) <= 1e-9, t, "local_unitary", after, before);
}

void continuity_trial_fn(std::uint64_t t, CounterRng& rng, TrialLog& log) {
    const int n = 2 + static_cast<int>(t % 2);
    std::vector<int> dims(static_cast<std::size_t>(n));
    for (int& d : dims) d = rng.integer(2, 3);
    const Register reg(dims);
    const LocalHamiltonian h = random_ladders(reg, rng);
    const PartitionMask x(n, static_cast<std::uint32_t>(rng.integer(1, (1 << n) - 2)));
    const std::vector<double> levels = cut_ladder(h, x);
    const int r = static_cast<int>(levels.size());
    const std::vector<double> a = random_probabilities(r, rng);
    std::vector<double> b;
    if (t % 4 < 2) {
        b = random_probabilities(r, rng);
    } else {
        // Small perturbation of a.
        const double eps = std::pow(10.0, -rng.uniform(1.0, 8.0));
        double sum = 0.0;
        for (double v : a) {
            b.push_back(std::max(0.0, v + eps * rng.normal()));
            sum += b.back();
        }
        for (double& v : b) v /= sum;
    }
    const auto c = continuity_check(Spectrum::from_values(a), Spectrum::from_values(b), levels);
    log.check(c.holds, t, "continuity", c.lhs, c.bound, mask_detail(x));
}

void theorem1_trial_fn(std::uint64_t t, CounterRng& rng, TrialLog& log) {
    const int n = 2 + static_cast<int>(t % 3);
    std::vector<int> dims(static_cast<std::size_t>(n));
    for (int& d : dims) d = rng.integer(2, 3);
    const Register reg(dims);
    std::vector<double> steps;
    for (int p = 0; p < n; ++p) steps.push_back(rng.uniform(0.2, 2.0));
    const LocalHamiltonian h = LocalHamiltonian::equispaced(reg, steps);
    const PureState psi = random_state(reg, rng);
    const auto c = relation_theorem1_check(psi, random_subset(n, rng), h);
    log.check(c.holds, t, "mb_equals_2me", c.mb, 2.0 * c.me, "n=" + std::to_string(n));
}

void prop4_trial_fn(std::uint64_t t, CounterRng& rng, TrialLog& log) {
    const int n = 3 + static_cast<int>(t % 2);
    const PureState psi = random_state(Register::qubits(n), rng);
    const auto c = prop4_bounds_check(psi, catalog::unit_qubits(n));
    log.check(c.chain_holds, t, "chain", c.dmin, c.davg, "me=" + fmt(c.me));
    log.check(c.scaled_chain_holds, t, "scaled_chain", (1.0 - std::ldexp(1.0, 1 - n)) * c.dmin, c.me);
    log.check(c.identity_holds, t, "identity", c.me, (1.0 - std::ldexp(1.0, 1 - n)) * c.davg);
    log.check(c.volume_holds, t, "volume", c.vol_lower_bound, c.me);
    log.check(c.fullsep_holds, t, "fullsep", c.me, c.fullsep);
}

void majorization_trial_fn(std::uint64_t t, CounterRng& rng, TrialLog& log) {
    const int n = 2 + static_cast<int>(t % 3);
    const int d = n == 2 ? rng.integer(2, 3) : 2;
    const Register reg(std::vector<int>(static_cast<std::size_t>(n), d));
    const std::vector<double> lam = random_probabilities(d, rng);
    const double tau = rng.uniform();
    std::vector<double> mu(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) mu[i] = (1.0 - tau) * lam[i] + (i == 0 ? tau : 0.0);
    // sum_i sqrt(p_i)|i...i> under independent random local unitaries.
    auto build = [&](const std::vector<double>& p) {
        CVector a = CVector::Zero(static_cast<Eigen::Index>(reg.size()));
        for (int i = 0; i < d; ++i) {
            const std::vector<int> labels(static_cast<std::size_t>(n), i);
            a[static_cast<Eigen::Index>(reg.index(labels))] = std::sqrt(p[static_cast<std::size_t>(i)]);
        }
        PureState st = PureState::normalized(reg, a);
        for (int q = 0; q < n; ++q) st = apply_instrument(st, random_instrument(q, d, 1, rng)).front().state;
        return st;
    };
    const PureState psi = build(lam), phi = build(mu);
    const LocalHamiltonian h = t % 2 == 0 ? LocalHamiltonian::equispaced(reg) : random_ladders(reg, rng);
    const auto c = majorization_check(psi, phi, random_subset(n, rng), h);
    log.check(c.premise, t, "premise", 0.0, 0.0, "constructed pair failed the premise");
    log.check(!c.premise || c.conclusion, t, "ordering", c.me_psi, c.me_phi);
}

void monogamy_trial_fn(std::uint64_t t, CounterRng& rng, TrialLog& log) {
    const Register reg = Register::qubits(3);
    const PureState psi = t == 0 ? catalog::w(3) : random_state(reg, rng);
    const int party = static_cast<int>(t % 3);
    const double alpha = t == 0 ? 2.0 : rng.uniform(1.0, 3.0);
    RoofConfig cfg;
    cfg.restarts = 8;
    cfg.max_iters = 200;
    cfg.seed = rng();
    const auto c = monogamy_check(psi, party, alpha, catalog::unit_qubits(3), cfg);
    log.check(c.holds, t, "monogamy", c.lhs, c.rhs, "party=" + std::to_string(party + 1) + ";alpha=" + fmt(alpha));
}

const std::map<std::string, std::pair<TrialFn, int>>& suites() {
    static const std::map<std::string, std::pair<TrialFn, int>> table{
        {"continuity", {continuity_trial_fn, 1000}},   {"majorization", {majorization_trial_fn, 1000}},
        {"monogamy", {monogamy_trial_fn, 60}},         {"monotonicity", {monotonicity_trial_fn, 10000}},
        {"prop4", {prop4_trial_fn, 500}},              {"theorem1", {theorem1_trial_fn, 600}},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, fn] : suites()) v.push_back(k);
        return v;
    }();
    return names;
}

int default_trials(const std::string& suite) {
    const auto it = suites().find(suite);
    if (it == suites().end()) throw ParseError("unknown verify suite '" + suite + "'");
    return it->second.second;
}

SuiteResult run_suite(const std::string& suite, std::uint64_t trials, std::uint64_t seed) {
    const auto it = suites().find(suite);
    if (it == suites().end()) throw ParseError("unknown verify suite '" + suite + "'");
    const TrialFn& fn = it->second.first;
    std::vector<TrialLog> logs(trials);
    const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto t = static_cast<std::uint64_t>(k);
        CounterRng rng(seed, t);
        TrialLog& log = logs[static_cast<std::size_t>(k)];
        try {
            fn(t, rng, log);
        } catch (const std::exception& e) {
            log.check(false, t, "exception", 0.0, 0.0, e.what());
        }
    }
    SuiteResult r{suite, trials, 0, {}};
    for (auto& log : logs) {
        r.checks += log.checks;
        for (auto& v : log.violations) r.violations.push_back(std::move(v));
    }
    return r;
}

CommandOutput cmd_verify(const VerifyOptions& o, RunManifest m) {
    const int trials = o.trials > 0 ? o.trials : default_trials(o.suite);
    if (o.trials < 0) throw ValidationError("--trials must be >= 1");
    const SuiteResult r = run_suite(o.suite, static_cast<std::uint64_t>(trials), o.seed);
    m.seed = o.seed;
    m.config = "suite=" + o.suite + ";trials=" + std::to_string(trials);
    CsvDocument doc(m);
    doc.comment("trials: " + std::to_string(r.trials));
    doc.comment("checks: " + std::to_string(r.checks));
    doc.comment("violations: " + std::to_string(r.violations.size()));
    doc.header({"suite", "trial", "seed", "check", "lhs", "rhs", "detail"});
    for (const auto& v : r.violations) {
        std::string detail = v.detail;
        for (char& ch : detail) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        doc.row({o.suite, std::to_string(v.trial), std::to_string(o.seed), v.check, fmt(v.lhs), fmt(v.rhs), detail});
    }
    CommandOutput out;
    out.exit_code = r.violations.empty() ? 0 : 1;
    out.csv = doc.str();
    out.summary = o.suite + ": " + std::to_string(r.trials) + " trials, " + std::to_string(r.checks) + " checks, " +
                  std::to_string(r.violations.size()) + " violations";
    return out;
}

}  // namespace ergent::cli
