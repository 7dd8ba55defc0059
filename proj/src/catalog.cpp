#include "ergent/catalog.hpp"

#include <cmath>
#include <numbers>

namespace ergent::catalog {

namespace {

constexpr double kZero = 1e-12;

bool is_zero(double x) { return std::abs(x) <= kZero; }

void check_n(int n, int lo) {
    if (n < lo || n > 12) {
        throw ValidationError("n must be in " + std::to_string(lo) + "..12, got " + std::to_string(n));
    }
}

void check_theta(double theta) {
    if (!(theta >= -1e-12 && theta <= std::numbers::pi / 2 + 1e-12)) {
        throw ValidationError("theta must lie in [0, pi/2]");
    }
}

// cos and sin with the endpoints of [0, pi/2] exact, so the product states
// there come out exactly separable.
std::pair<double, double> cos_sin(double theta) {
    if (theta == 0.0) return {1.0, 0.0};
    if (std::abs(theta - std::numbers::pi / 2) <= 1e-15) return {0.0, 1.0};
    return {std::cos(theta), std::sin(theta)};
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double me_unit(const PureState& psi) {
    const int n = psi.reg().parties();
    return me_pure(psi, SubsetChoice::full(n), unit_qubits(n), Exec::serial).value;
}

ClosedFormResult finish(double value, std::string id, std::string regime, const SchmidtParams3Q& p) {
    ClosedFormResult r;
    r.value = value;
    r.formula_id = std::move(id);
    r.regime = std::move(regime);
    r.definition_value = me_unit(generalized_schmidt_3q(p));
    r.discrepancy = std::abs(r.value - r.definition_value);
    return r;
}

}  // namespace

PureState ghz(int n) {
    check_n(n, 2);
    const Register reg = Register::qubits(n);
    CVector a = CVector::Zero(static_cast<Eigen::Index>(reg.size()));
    a[0] = a[a.size() - 1] = 1.0 / std::sqrt(2.0);
    return PureState(reg, a);
}

PureState w(int n) {
    check_n(n, 2);
    const Register reg = Register::qubits(n);
    CVector a = CVector::Zero(static_cast<Eigen::Index>(reg.size()));
    for (int i = 0; i < n; ++i) a[static_cast<Eigen::Index>(reg.stride(i))] = 1.0 / std::sqrt(static_cast<double>(n));
    return PureState(reg, a);
}

double SchmidtParams3Q::alpha() const {
    return std::norm(lambda[1] * lambda[4] * std::polar(1.0, phi) - lambda[2] * lambda[3]);
}

void SchmidtParams3Q::validate() const {
    double sum = 0.0;
    for (double l : lambda) {
        if (!(l >= 0.0) || !std::isfinite(l)) throw ValidationError("Schmidt coefficients must be nonnegative");
        sum += l * l;
    }
    if (std::abs(sum - 1.0) > 1e-10) throw ValidationError("Schmidt coefficients are not normalized");
    if (!(phi >= 0.0 && phi <= std::numbers::pi)) throw ValidationError("phase must lie in [0, pi]");
}

PureState generalized_schmidt_3q(const SchmidtParams3Q& p) {
    p.validate();
    const Register reg = Register::qubits(3);
    CVector a = CVector::Zero(8);
    a[0b000] = p.lambda[0];
    a[0b100] = std::polar(p.lambda[1], p.phi);
    a[0b101] = p.lambda[2];
    a[0b110] = p.lambda[3];
    a[0b111] = p.lambda[4];
    return PureState::normalized(reg, a);
}

std::array<double, 3> passive_energies_3q(const SchmidtParams3Q& p) {
    p.validate();
    const auto& l = p.lambda;
    const double a = p.alpha();
    auto half = [](double x) { return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * x))); };
    return {half(l[0] * l[0] * (1.0 - l[0] * l[0] - l[1] * l[1])),
            half(l[0] * l[0] * (l[3] * l[3] + l[4] * l[4]) + a),
            half(l[0] * l[0] * (l[2] * l[2] + l[4] * l[4]) + a)};
}

LocalHamiltonian unit_qubits(int n) { return LocalHamiltonian::equispaced(Register::qubits(n), 1.0); }

std::string to_string(Table1Class c) {
    switch (c) {
        case Table1Class::GenGHZ: return "GenGHZ";
        case Table1Class::TriBell: return "TriBell";
        case Table1Class::ExtGHZ: return "ExtGHZ";
    }
    return "?";
}

namespace {

// Regime boundaries at 1/2 resolve to the <= branch, up to squaring round-off.
bool at_most_half(double x) { return x <= 0.5 + 1e-12; }

}  // namespace

ClosedFormResult table1_value(Table1Class cls, const SchmidtParams3Q& p) {
    p.validate();
    const auto& l = p.lambda;
    const double l0 = l[0] * l[0], l2 = l[2] * l[2], l3 = l[3] * l[3], l4 = l[4] * l[4];
    switch (cls) {
        case Table1Class::GenGHZ: {
            if (!(is_zero(l[1]) && is_zero(l[2]) && is_zero(l[3])) || is_zero(l[0]) || is_zero(l[4])) {
                throw ValidationError("GenGHZ needs lambda_0 lambda_4 != 0 = lambda_1 = lambda_2 = lambda_3");
            }
            if (at_most_half(l0)) return finish(1.5 * l0, "genghz.le", "lambda0^2 <= 0.5", p);
            return finish(1.5 * (1.0 - l0), "genghz.ge", "lambda0^2 >= 0.5", p);
        }
        case Table1Class::TriBell: {
            if (!is_zero(l[1]) || !is_zero(l[4])) throw ValidationError("TriBell needs lambda_1 = lambda_4 = 0");
            if (at_most_half(l0) && at_most_half(l2) && at_most_half(l3)) {
                return finish(0.5, "tribell.const", "lambda0^2, lambda2^2, lambda3^2 <= 0.5", p);
            }
            if (l0 > 0.5) return finish(1.0 - l0, "tribell.l0", "lambda0^2 >= 0.5", p);
            if (l3 > 0.5) return finish(1.0 - l3, "tribell.l3", "lambda3^2 >= 0.5", p);
            return finish(1.0 - l2, "tribell.l2", "lambda2^2 >= 0.5", p);
        }
        case Table1Class::ExtGHZ: {
            const int nonzero = !is_zero(l[1]) + !is_zero(l[2]) + !is_zero(l[3]);
            if (nonzero != 1) throw ValidationError("ExtGHZ needs exactly one of lambda_1, lambda_2, lambda_3 nonzero");
            const double root = 1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * l0 * l4));
            if (!is_zero(l[1])) {
                if (at_most_half(l4)) return finish(0.25 * (root + 4.0 * l4), "extghz.l1.le", "lambda1 != 0, lambda4^2 <= 0.5", p);
                return finish(0.25 * (root + 4.0 * (1.0 - l4)), "extghz.l1.ge", "lambda1 != 0, lambda4^2 >= 0.5", p);
            }
            const std::string k = !is_zero(l[2]) ? "2" : "3";
            if (at_most_half(l0)) {
                return finish(0.25 * (root + 4.0 * l0), "extghz.l" + k + ".le", "lambda" + k + " != 0, lambda0^2 <= 0.5", p);
            }
            return finish(0.25 * (root + 4.0 * (1.0 - l0)), "extghz.l" + k + ".ge",
                          "lambda" + k + " != 0, lambda0^2 >= 0.5", p);
        }
    }
    throw ValidationError("unknown Table 1 class");
}

const std::vector<std::string>& table1_formula_ids() {
    static const std::vector<std::string> ids{
        "genghz.le",    "genghz.ge",    "tribell.l0",   "tribell.l3",   "tribell.l2",   "tribell.const",
        "extghz.l1.le", "extghz.l1.ge", "extghz.l2.le", "extghz.l2.ge", "extghz.l3.le", "extghz.l3.ge"};
    return ids;
}

Table1Class table1_class_of(const std::string& formula_id) {
    if (formula_id.rfind("genghz", 0) == 0) return Table1Class::GenGHZ;
    if (formula_id.rfind("tribell", 0) == 0) return Table1Class::TriBell;
    if (formula_id.rfind("extghz", 0) == 0) return Table1Class::ExtGHZ;
    throw ValidationError("unknown Table 1 formula id '" + formula_id + "'");
}

namespace {

// Uniform point on the probability simplex of dimension k.
std::vector<double> simplex(int k, CounterRng& rng) {
    std::vector<double> x(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (double& v : x) {
        v = -std::log(1.0 - rng.uniform());
        sum += v;
    }
    for (double& v : x) v /= sum;
    return x;
}

// Squared coefficient above one half, bounded away from the edges.
double upper_half(CounterRng& rng) { return rng.uniform(0.5 + 1e-6, 1.0 - 1e-6); }

SchmidtParams3Q from_squares(std::array<double, 5> sq, double phi) {
    SchmidtParams3Q p;
    double sum = 0.0;
    for (double v : sq) sum += v;
    for (std::size_t i = 0; i < 5; ++i) p.lambda[i] = std::sqrt(sq[i] / sum);
    p.phi = phi;
    return p;
}

}  // namespace

SchmidtParams3Q sample_table1(const std::string& id, CounterRng& rng) {
    const double phi = rng.uniform(0.0, std::numbers::pi);
    if (id == "genghz.le" || id == "genghz.ge") {
        const double x = id == "genghz.le" ? rng.uniform(1e-6, 0.5) : upper_half(rng);
        return from_squares({x, 0, 0, 0, 1.0 - x}, phi);
    }
    if (id == "tribell.const") {
        for (;;) {
            const auto x = simplex(3, rng);
            if (x[0] < 0.5 && x[1] < 0.5 && x[2] < 0.5) return from_squares({x[0], 0, x[1], x[2], 0}, phi);
        }
    }
    if (id == "tribell.l0" || id == "tribell.l2" || id == "tribell.l3") {
        const double big = upper_half(rng);
        const double split = rng.uniform(1e-3, 1.0 - 1e-3);
        const double a = (1.0 - big) * split, b = (1.0 - big) - a;
        if (id == "tribell.l0") return from_squares({big, 0, a, b, 0}, phi);
        if (id == "tribell.l2") return from_squares({a, 0, big, b, 0}, phi);
        return from_squares({a, 0, b, big, 0}, phi);
    }
    if (id.rfind("extghz.", 0) == 0 && id.size() == 12) {
        const int k = id[8] - '0';
        const bool le = id.substr(10) == "le";
        // The constrained coefficient is lambda_4 for k = 1, lambda_0 otherwise.
        const double fixed = le ? rng.uniform(1e-6, 0.5) : upper_half(rng);
        const double split = rng.uniform(1e-3, 1.0 - 1e-3);
        const double a = (1.0 - fixed) * split, b = (1.0 - fixed) - a;
        std::array<double, 5> sq{};
        sq[static_cast<std::size_t>(k)] = a;
        if (k == 1) {
            sq[4] = fixed;
            sq[0] = b;
        } else {
            sq[0] = fixed;
            sq[4] = b;
        }
        return from_squares(sq, phi);
    }
    throw ValidationError("unknown Table 1 formula id '" + id + "'");
}

double fig1_family_me(double lambda0, double lambda4) {
    const double a = lambda0 * lambda0, b = lambda4 * lambda4;
    if (a + b > 1.0 + 1e-12) throw ValidationError("lambda0^2 + lambda4^2 exceeds 1");
    return 0.25 * (3.0 - 2.0 * std::sqrt(std::max(0.0, 1.0 - 4.0 * a * (1.0 - a))) -
                   std::sqrt(std::max(0.0, 1.0 - 4.0 * a * b)));
}

std::vector<Table2Row> table2_rows() {
    const Register reg = Register::qubits(3);
    auto make = [&](std::initializer_list<std::pair<int, double>> amps) {
        CVector a = CVector::Zero(8);
        for (const auto& [idx, v] : amps) a[idx] = v;
        return PureState(reg, a);
    };
    std::vector<Table2Row> rows;
    rows.push_back({"psi", make({{0b000, std::sqrt(1.0 / 3.0)}, {0b111, std::sqrt(2.0 / 3.0)}}), 0.5, 0.667, 0.667,
                    0.667, 0.667});
    rows.push_back({"phi",
                    make({{0b000, std::sqrt(0.5)}, {0b110, std::sqrt(9.0 / 32.0)}, {0b111, std::sqrt(7.0 / 32.0)}}),
                    0.562, 0.250, 0.750, 0.559, 0.630});
    rows.push_back({"chi", make({{0b000, 0.5}, {0b111, std::sqrt(3.0) / 2.0}}), 0.375, 0.500, 0.500, 0.500, 0.500});
    rows.push_back({"zeta",
                    make({{0b000, std::sqrt(3.0 / 8.0)}, {0b110, std::sqrt(1.0 / 3.0)}, {0b111, std::sqrt(7.0 / 24.0)}}),
                    0.438, 0.250, 0.583, 0.479, 0.520});
    rows.push_back({"eta", make({{0b000, 3.0 / std::sqrt(50.0)}, {0b111, std::sqrt(41.0 / 50.0)}}), 0.270, 0.360, 0.360,
                    0.360, 0.360});
    return rows;
}

PureState star_state(double theta) {
    check_theta(theta);
    const Register reg({8, 2, 2, 2});
    const auto [c, s] = cos_sin(theta);
    CVector a = CVector::Zero(static_cast<Eigen::Index>(reg.size()));
    // Pair k contributes bit (2 - k) of A and the qubit of party k + 1.
    for (int bits = 0; bits < 8; ++bits) {
        const int b = (bits >> 2) & 1, cc = (bits >> 1) & 1, d = bits & 1;
        const int labels[4] = {bits, b, cc, d};
        double amp = 1.0;
        for (int k = 0; k < 3; ++k) amp *= ((bits >> (2 - k)) & 1) ? s : c;
        a[static_cast<Eigen::Index>(reg.index(labels))] = amp;
    }
    return PureState(reg, a);
}

LocalHamiltonian star_hamiltonian() { return LocalHamiltonian::top_projector(Register({8, 2, 2, 2}), 7); }

double star_me_definition(double theta) {
    return me_pure(star_state(theta), SubsetChoice::full(4), star_hamiltonian(), Exec::serial).value;
}

double star_me_paper(double theta) {
    check_theta(theta);
    const auto [c, s] = cos_sin(theta);
    const double c2 = c * c, s2 = s * s;
    return 0.25 * (7.0 * s2 * s2 * s2 + 3.0 * c2 * c2 * s2 * s2 + 6.0 * c2 * s2 * s2);
}

PureState psi4(double theta) {
    check_theta(theta);
    const auto [c, s] = cos_sin(theta);
    CVector a = CVector::Zero(16);
    a[0b0000] = c;
    a[0b1111] = s;
    return PureState(Register::qubits(4), a);
}

PureState phi4(double theta) {
    check_theta(theta);
    const auto [c, s] = cos_sin(theta);
    CVector a = CVector::Zero(16);
    a[0b0000] = c * c;
    a[0b0011] = c * s;
    a[0b1100] = c * s;
    a[0b1111] = s * s;
    return PureState(Register::qubits(4), a);
}

namespace {
double low_branch(double theta) {
    check_theta(theta);
    const auto [c, s] = cos_sin(theta);
    return theta <= std::numbers::pi / 4 ? s * s : c * c;
}
}  // namespace

double psi4_me(double theta) { return 1.75 * low_branch(theta); }

double phi4_me_paper(double theta) {
    const double x = low_branch(theta);
    return x + 0.5 * x * x;
}

double fullsep4(double theta) { return 4.0 * low_branch(theta); }

SubsetChoice subset_for(int n, SubsetMode mode) {
    if (mode == SubsetMode::full) return SubsetChoice::full(n);
    return SubsetChoice(PartitionMask(n, (1u << (n - 1)) - 1u));
}

GhzWForms ghz_w_closed_forms(int n, SubsetMode mode) {
    check_n(n, 3);
    const double c = binom(n - 1, (n - 1) / 2);
    GhzWForms f;
    f.ghz = 1.0 - std::ldexp(1.0, 1 - n);
    f.w = mode == SubsetMode::full ? 1.0 - c * std::ldexp(1.0, 1 - n) : 0.5 - c * std::ldexp(1.0, -n);
    return f;
}

GhzWForms ghz_w_direct(int n, SubsetMode mode, Exec exec) {
    check_n(n, 3);
    const SubsetChoice s = subset_for(n, mode);
    const LocalHamiltonian h = unit_qubits(n);
    return {me_pure(ghz(n), s, h, exec).value, me_pure(w(n), s, h, exec).value};
}

}  // namespace ergent::catalog
