#include "ergent/cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace ergent::cli {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& line, const std::string& what) {
    throw ParseError("line " + std::to_string(line.number) + ": " + what);
}

int to_int(const Line& line, const std::string& tok) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line, "expected an integer, got '" + tok + "'");
    return v;
}

double to_double(const Line& line, const std::string& tok) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        fail(line, "expected a number, got '" + tok + "'");
    }
    return v;
}

Register parse_dims(const Line& line) {
    if (line.tokens.size() < 2) fail(line, "dims needs at least one dimension");
    std::vector<int> dims;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) dims.push_back(to_int(line, line.tokens[k]));
    return Register(std::move(dims));
}

class KetAccumulator {
public:
    explicit KetAccumulator(const Register& reg) : reg_(reg), amps_(CVector::Zero(static_cast<Eigen::Index>(reg.size()))) {}

    void add(const Line& line) {
        const auto m = static_cast<std::size_t>(reg_.parties());
        if (line.tokens.size() != m + 3) {
            fail(line, "ket needs " + std::to_string(m) + " labels and RE IM");
        }
        std::vector<int> labels(m);
        for (std::size_t k = 0; k < m; ++k) {
            labels[k] = to_int(line, line.tokens[k + 1]);
            if (labels[k] < 0 || labels[k] >= reg_.dim(static_cast<int>(k))) {
                throw ValidationError("line " + std::to_string(line.number) + ": basis label out of range");
            }
        }
        const std::size_t idx = reg_.index(labels);
        if (!seen_.insert(idx).second) fail(line, "duplicate ket");
        amps_[static_cast<Eigen::Index>(idx)] = Complex(to_double(line, line.tokens[m + 1]), to_double(line, line.tokens[m + 2]));
    }

    bool empty() const { return seen_.empty(); }

    PureState finish(bool normalize) const {
        const double norm = amps_.norm();
        if (norm == 0.0) throw ValidationError("state has zero norm");
        if (!normalize && std::abs(norm - 1.0) > kInputNormTol) {
            std::ostringstream os;
            os.precision(17);
            os << "state norm " << norm << " differs from 1 by more than 1e-8 (use --normalize)";
            throw ValidationError(os.str());
        }
        return PureState::normalized(reg_, amps_);
    }

private:
    Register reg_;
    CVector amps_;
    std::set<std::size_t> seen_;
};

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PureState parse_state(const std::string& text, bool normalize) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines.front().tokens.front() != "dims") throw ParseError("state file must start with 'dims'");
    const Register reg = parse_dims(lines.front());
    KetAccumulator acc(reg);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].tokens.front() != "ket") fail(lines[k], "expected 'ket'");
        acc.add(lines[k]);
    }
    if (acc.empty()) throw ParseError("state file has no kets");
    return acc.finish(normalize);
}

Mixture parse_mixture(const std::string& text, bool normalize) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines.front().tokens.front() != "dims") throw ParseError("mixture file must start with 'dims'");
    const Register reg = parse_dims(lines.front());
    if (reg.size() > kMaxDensityDimension) throw ValidationError("mixture dimension exceeds the density-matrix cap");
    Ensemble ens;
    std::optional<KetAccumulator> acc;
    double p = 0.0;
    auto flush = [&] {
        if (!acc) return;
        if (acc->empty()) throw ParseError("mixture member has no kets");
        ens.members.push_back({p, acc->finish(normalize)});
        acc.reset();
    };
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.tokens.front() == "mix") {
            flush();
            if (line.tokens.size() != 2) fail(line, "mix needs one probability");
            p = to_double(line, line.tokens[1]);
            if (p <= 0.0 || p > 1.0) throw ValidationError("line " + std::to_string(line.number) + ": probability must lie in (0, 1]");
            acc.emplace(reg);
        } else if (line.tokens.front() == "ket") {
            if (!acc) fail(line, "ket before the first 'mix'");
            acc->add(line);
        } else {
            fail(line, "expected 'mix' or 'ket'");
        }
    }
    flush();
    if (ens.members.empty()) throw ParseError("mixture file has no members");
    double total = 0.0;
    for (const auto& m : ens.members) total += m.probability;
    if (std::abs(total - 1.0) > kMixtureSumTol) throw ValidationError("mixture probabilities do not sum to 1");
    CMatrix rho = ens.reconstruct();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return {std::move(ens), DensityOperator(reg, rho / rho.trace().real())};
}

std::string format_mixture(const Ensemble& ens) {
    std::ostringstream os;
    os.precision(17);
    if (ens.members.empty()) return {};
    const Register& reg = ens.members.front().state.reg();
    os << "dims";
    for (int d : reg.dims()) os << ' ' << d;
    os << '\n';
    for (const auto& m : ens.members) {
        os << "mix " << m.probability << '\n';
        const CVector& a = m.state.amplitudes();
        for (std::size_t i = 0; i < reg.size(); ++i) {
            const Complex z = a[static_cast<Eigen::Index>(i)];
            if (std::abs(z) == 0.0) continue;
            os << "ket";
            for (int l : reg.labels(i)) os << ' ' << l;
            os << ' ' << z.real() << ' ' << z.imag() << '\n';
        }
    }
    return os.str();
}

LocalHamiltonian parse_hamiltonian_text(const std::string& text, const Register& reg) {
    const auto lines = tokenize(text);
    std::vector<std::vector<double>> energies(static_cast<std::size_t>(reg.parties()));
    std::vector<bool> seen(energies.size(), false);
    bool degenerate = false;
    for (const auto& line : lines) {
        if (line.tokens.front() == "allow-degenerate") {
            if (line.tokens.size() != 1) fail(line, "allow-degenerate takes no arguments");
            degenerate = true;
        } else if (line.tokens.front() == "party") {
            if (line.tokens.size() < 3) fail(line, "party needs an index and energies");
            const int i = to_int(line, line.tokens[1]);
            if (i < 1 || i > reg.parties()) throw ValidationError("line " + std::to_string(line.number) + ": party index out of range");
            const auto k = static_cast<std::size_t>(i - 1);
            if (seen[k]) fail(line, "party given twice");
            seen[k] = true;
            for (std::size_t t = 2; t < line.tokens.size(); ++t) energies[k].push_back(to_double(line, line.tokens[t]));
        } else {
            fail(line, "expected 'party' or 'allow-degenerate'");
        }
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
        if (!seen[k]) throw ValidationError("Hamiltonian file has no line for party " + std::to_string(k + 1));
    }
    return LocalHamiltonian(reg, std::move(energies), degenerate, "file");
}

LocalHamiltonian parse_hamiltonian(const std::string& spec, const Register& reg) {
    auto number = [&](const std::string& s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("bad number in --ham '" + spec + "'");
        return v;
    };
    if (spec.rfind("equispaced:", 0) == 0) return LocalHamiltonian::equispaced(reg, number(spec.substr(11)));
    if (spec.rfind("top:", 0) == 0) {
        const double level = number(spec.substr(4));
        if (level != std::floor(level)) throw ParseError("top level must be an integer");
        return LocalHamiltonian::top_projector(reg, static_cast<int>(level));
    }
    return parse_hamiltonian_text(read_file(spec), reg);
}

SubsetChoice parse_subset(const std::string& spec, int parties) {
    if (spec.empty()) return SubsetChoice::full(parties);
    std::vector<int> members;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError("bad --subset entry '" + tok + "'");
        if (v < 1 || v > parties) throw ValidationError("--subset party " + tok + " out of range");
        members.push_back(v - 1);
    }
    return SubsetChoice(PartitionMask::of(parties, members));
}

std::vector<MeasureKind> parse_kinds(const std::string& spec) {
    std::vector<MeasureKind> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(parse_measure_kind(tok));
        } catch (const ValidationError& e) {
            throw ParseError(e.what());
        }
    }
    if (out.empty()) throw ParseError("no measure kinds given");
    return out;
}

std::string cut_label(const PartitionMask& x) {
    auto side = [](const PartitionMask& m) {
        std::string s;
        for (int p : m.members()) {
            if (!s.empty()) s += '+';
            s += std::to_string(p + 1);
        }
        return s;
    };
    return side(x) + "|" + side(x.complement());
}

}  // namespace ergent::cli
