#include <cmath>
#include <numbers>

#include "ergent/catalog.hpp"
#include "ergent/cli/commands.hpp"

namespace ergent::cli {

namespace {

namespace cat = ergent::catalog;

double grid_point(int k, int grid, double hi) { return grid == 1 ? 0.0 : hi * k / (grid - 1); }

std::string flag(bool b) { return b ? "1" : "0"; }

void repro_table1(const ReproOptions& o, CsvDocument& doc) {
    doc.header({"class", "formula_id", "regime", "sample", "lambda0", "lambda1", "lambda2", "lambda3", "lambda4", "phi",
                "formula", "definition", "discrepancy"});
    const CounterRng root(o.seed);
    const auto& ids = cat::table1_formula_ids();
    for (std::size_t r = 0; r < ids.size(); ++r) {
        CounterRng rng = root.split(r);
        for (int k = 0; k < o.samples; ++k) {
            const auto p = cat::sample_table1(ids[r], rng);
            const auto cls = cat::table1_class_of(ids[r]);
            const auto res = cat::table1_value(cls, p);
            doc.row({cat::to_string(cls), res.formula_id, res.regime, std::to_string(k), fmt(p.lambda[0]),
                     fmt(p.lambda[1]), fmt(p.lambda[2]), fmt(p.lambda[3]), fmt(p.lambda[4]), fmt(p.phi),
                     fmt(res.value), fmt(res.definition_value), fmt(res.discrepancy)});
        }
    }
}

void repro_table2(CsvDocument& doc) {
    doc.header({"state", "me", "dmin", "davg", "dvol", "delta_F", "me_printed", "dmin_printed", "davg_printed",
                "dfill_printed", "dvol_printed", "max_abs_diff"});
    const LocalHamiltonian h = cat::unit_qubits(3);
    const SubsetChoice s = SubsetChoice::full(3);
    for (const auto& row : cat::table2_rows()) {
        const double me = me_pure(row.state, s, h).value;
        const double dmin = delta_min(row.state, s, h), davg = delta_avg(row.state, s, h), dvol = delta_vol(row.state, s, h);
        const double diff = std::max({std::abs(me - row.me), std::abs(dmin - row.dmin), std::abs(davg - row.davg),
                                      std::abs(dvol - row.dvol)});
        doc.row({row.name, fmt(me), fmt(dmin), fmt(davg), fmt(dvol), "NA", fmt(row.me), fmt(row.dmin), fmt(row.davg),
                 fmt(row.dfill), fmt(row.dvol), fmt(diff)});
    }
}

void repro_ghz_w(const ReproOptions& o, CsvDocument& doc) {
    if (o.n_max < 3 || o.n_max > 12) throw ValidationError("--n-max must be in 3..12");
    doc.header({"n", "mode", "s_size", "ghz_formula", "ghz_direct", "w_formula", "w_direct", "difference_direct",
                "w_discrepancy", "flagged"});
    for (int n = 3; n <= o.n_max; ++n) {
        for (auto mode : {cat::SubsetMode::full, cat::SubsetMode::n_minus_1}) {
            const auto f = cat::ghz_w_closed_forms(n, mode);
            const auto d = cat::ghz_w_direct(n, mode);
            const double disc = std::abs(f.w - d.w);
            doc.row({std::to_string(n), mode == cat::SubsetMode::full ? "full" : "n_minus_1",
                     std::to_string(mode == cat::SubsetMode::full ? n : n - 1), fmt(f.ghz), fmt(d.ghz), fmt(f.w),
                     fmt(d.w), fmt(d.ghz - d.w), fmt(disc), flag(disc > 1e-9 || std::abs(f.ghz - d.ghz) > 1e-9)});
        }
        // GHZ - W for every prefix subset size.
        const LocalHamiltonian h = cat::unit_qubits(n);
        for (int k = 1; k <= n; ++k) {
            const SubsetChoice s(PartitionMask(n, (k == 32 ? 0u : (1u << k)) - 1u));
            const double g = me_pure(cat::ghz(n), s, h).value, w = me_pure(cat::w(n), s, h).value;
            doc.row({std::to_string(n), "size", std::to_string(k), "NA", fmt(g), "NA", fmt(w), fmt(g - w), "NA", "0"});
        }
    }
}

void repro_star(const ReproOptions& o, CsvDocument& doc) {
    const int grid = o.grid > 0 ? o.grid : 181;
    doc.header({"theta", "me_definition", "me_printed", "discrepancy", "dmin", "davg", "dvol"});
    const LocalHamiltonian h = cat::star_hamiltonian();
    const SubsetChoice s = SubsetChoice::full(4);
    for (int k = 0; k < grid; ++k) {
        const double theta = grid_point(k, grid, std::numbers::pi / 2);
        const PureState psi = cat::star_state(theta);
        const double def = me_pure(psi, s, h).value, paper = cat::star_me_paper(theta);
        doc.row({fmt(theta), fmt(def), fmt(paper), fmt(std::abs(def - paper)), fmt(delta_min(psi, s, h)),
                 fmt(delta_avg(psi, s, h)), fmt(delta_vol(psi, s, h))});
    }
}

void repro_fig1(const ReproOptions& o, CsvDocument& doc) {
    const int grid = o.grid > 0 ? o.grid : 200;
    doc.header({"lambda0", "lambda3", "lambda4", "me_formula", "me_direct", "discrepancy", "sep_threshold",
                "gme_certified", "ent_certified"});
    const CounterRng root(o.seed);
    for (int k = 0; k < grid; ++k) {
        // Open interval (0, 1) so both lambda_0 and the remainder are nonzero.
        const double l0 = (k + 0.5) / grid;
        CounterRng rng = root.split(static_cast<std::uint64_t>(k));
        const double rest = 1.0 - l0 * l0;
        const double l4sq = rest * rng.uniform();
        const double l4 = std::sqrt(l4sq), l3 = std::sqrt(std::max(0.0, rest - l4sq));
        cat::SchmidtParams3Q p;
        p.lambda = {l0, 0.0, 0.0, l3, l4};
        const PureState psi = cat::generalized_schmidt_3q(p);
        const auto g = gme_criterion_3q(psi);
        const double f = cat::fig1_family_me(l0, l4);
        doc.row({fmt(l0), fmt(l3), fmt(l4), fmt(f), fmt(g.me), fmt(std::abs(f - g.me)), fmt(g.sep_threshold),
                 flag(g.gme_certified), flag(g.ent_certified)});
    }
}

void repro_fig2(const ReproOptions& o, CsvDocument& doc) {
    const int grid = o.grid > 0 ? o.grid : 91;
    doc.header({"theta", "psi_me", "psi_me_formula", "phi_me", "phi_me_printed", "phi_discrepancy", "fullsep_psi",
                "fullsep_phi", "fullsep_formula"});
    const LocalHamiltonian h = cat::unit_qubits(4);
    const SubsetChoice s = SubsetChoice::full(4);
    for (int k = 0; k < grid; ++k) {
        const double theta = grid_point(k, grid, std::numbers::pi / 2);
        const PureState psi = cat::psi4(theta), phi = cat::phi4(theta);
        const double pm = me_pure(psi, s, h).value, fm = me_pure(phi, s, h).value;
        doc.row({fmt(theta), fmt(pm), fmt(cat::psi4_me(theta)), fmt(fm), fmt(cat::phi4_me_paper(theta)),
                 fmt(std::abs(fm - cat::phi4_me_paper(theta))), fmt(fully_separable_gap(psi, h)),
                 fmt(fully_separable_gap(phi, h)), fmt(cat::fullsep4(theta))});
    }
}

}  // namespace

CommandOutput cmd_repro(const ReproOptions& o, RunManifest m) {
    if (o.grid < 0) throw ValidationError("--grid must be positive");
    if (o.samples < 1) throw ValidationError("--samples must be >= 1");
    m.seed = o.seed;
    m.config = "target=" + o.target + ";grid=" + std::to_string(o.grid) + ";n_max=" + std::to_string(o.n_max) +
               ";samples=" + std::to_string(o.samples);
    CsvDocument doc(m);
    if (o.target == "table1") {
        repro_table1(o, doc);
    } else if (o.target == "table2") {
        repro_table2(doc);
    } else if (o.target == "ghz-w") {
        repro_ghz_w(o, doc);
    } else if (o.target == "star") {
        repro_star(o, doc);
    } else if (o.target == "fig1") {
        repro_fig1(o, doc);
    } else if (o.target == "fig2") {
        repro_fig2(o, doc);
    } else {
        throw ParseError("unknown repro target '" + o.target + "'");
    }
    return {0, doc.str(), "", ""};
}

}  // namespace ergent::cli
