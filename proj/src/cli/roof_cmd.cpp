#include "ergent/cli/commands.hpp"
#include "ergent/cli/io.hpp"
#include "ergent/roof.hpp"

namespace ergent::cli {

CommandOutput cmd_roof(const RoofOptions& o, RunManifest m) {
    const Mixture mix = parse_mixture(read_file(o.mixture_path), o.normalize);
    const Register& reg = mix.rho.reg();
    const SubsetChoice s = parse_subset(o.subset, reg.parties());
    const LocalHamiltonian h = parse_hamiltonian(o.ham, reg);
    const MeasureKind kind = parse_kinds(o.kind).front();
    if (kind != MeasureKind::ME && kind != MeasureKind::MB) throw ValidationError("roof supports ME and MB only");

    RoofConfig cfg;
    cfg.restarts = o.restarts;
    cfg.ensemble_size = o.ensemble_size;
    cfg.max_iters = o.max_iters;
    cfg.seed = o.seed;
    const GapKind gk = kind == MeasureKind::ME ? GapKind::ergotropic : GapKind::capacity;
    const RoofResult res = kind == MeasureKind::ME ? roof_me(mix.rho, s, h, cfg) : roof_mb(mix.rho, s, h, cfg);
    const double eigen_avg = eigen_ensemble_average(mix.rho, s, h, gk);

    m.seed = o.seed;
    m.config = "mixture=" + o.mixture_path + ";kind=" + to_string(kind) + ";ham=" + h.id() +
               ";restarts=" + std::to_string(o.restarts) + ";ensemble_size=" + std::to_string(o.ensemble_size) +
               ";max_iters=" + std::to_string(o.max_iters);
    CsvDocument doc(m);
    doc.header({"kind", "value", "converged", "restarts", "ensemble_size", "rank", "members", "eigen_ensemble_value"});
    doc.row({to_string(kind), fmt(res.value), res.converged ? "1" : "0", std::to_string(res.restarts),
             std::to_string(res.ensemble_size), std::to_string(res.rank), std::to_string(res.ensemble.members.size()),
             fmt(eigen_avg)});
    CommandOutput out{0, doc.str(), "", ""};
    if (o.dump_ensemble) out.side_file = format_mixture(res.ensemble);
    return out;
}

}  // namespace ergent::cli
