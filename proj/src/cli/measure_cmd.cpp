#include <limits>
#include <map>

#include "ergent/cli/commands.hpp"
#include "ergent/cli/io.hpp"

namespace ergent::cli {

namespace {

std::string subset_label(const PartitionMask& s) {
    std::string out;
    for (int p : s.members()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(p + 1);
    }
    return out;
}

}  // namespace

CommandOutput cmd_measure(const MeasureOptions& o, RunManifest m) {
    const PureState psi = parse_state(read_file(o.state_path), o.normalize);
    const int n = psi.reg().parties();
    const SubsetChoice s = parse_subset(o.subset, n);
    const LocalHamiltonian h = parse_hamiltonian(o.ham, psi.reg());

    std::vector<MeasureKind> kinds;
    if (o.kinds.empty()) {
        kinds = {MeasureKind::ME, MeasureKind::MB};
        if (s.mask().is_full() && n >= 2) {
            for (auto k : {MeasureKind::DMIN, MeasureKind::DAVG, MeasureKind::DVOL, MeasureKind::FULLSEP}) kinds.push_back(k);
        }
    } else {
        kinds = parse_kinds(o.kinds);
    }

    std::vector<MeasureReport> reports;
    std::map<PartitionMask, std::size_t> columns;
    for (auto k : kinds) {
        reports.push_back(measure(psi, s, h, k));
        for (const auto& [x, g] : reports.back().per_cut) columns.emplace(x, 0);
    }

    m.config = "state=" + o.state_path + ";subset=" + subset_label(s.mask()) + ";ham=" + h.id() +
               ";normalize=" + (o.normalize ? "1" : "0");
    CsvDocument doc(m);
    std::vector<std::string> head{"kind", "value", "subset", "hamiltonian"};
    for (auto& [x, col] : columns) {
        col = head.size();
        head.push_back("gap[" + cut_label(x) + "]");
    }
    doc.header(head);
    for (const auto& r : reports) {
        std::vector<std::string> cells(head.size(), "NA");
        cells[0] = to_string(r.kind);
        cells[1] = fmt(r.value);
        cells[2] = subset_label(s.mask());
        cells[3] = h.id();
        for (const auto& [x, g] : r.per_cut) cells[columns.at(x)] = fmt(g);
        doc.row(cells);
    }
    return {0, doc.str(), "", ""};
}

}  // namespace ergent::cli
