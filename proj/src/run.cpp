#include "nhzak/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "nhzak/errors.hpp"
#include "nhzak/zak.hpp"

namespace nhzak {

namespace fs = std::filesystem;

namespace {

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  RunSummary summary;

  std::string path(const std::string& name) {
    summary.files.push_back(name);
    return (dir / name).string();
  }
};

void record_config(Manifest& m, const RunConfig& c) {
  m.set("tool_version", std::string(kToolVersion));
  m.set("command", c.command);
  m.set("delta", c.delta);
  m.set("Delta", c.Delta);
  m.set("flux", c.flux);
  m.set("dt", c.dt);
  m.set("n_k", c.n_k);
  m.set("n_quad", c.n_quad);
  m.set("tolerance", c.tolerance);
}

void record_prediction(Manifest& m, const RunConfig& c) {
  if (!(std::abs(c.Delta) < std::abs(c.delta))) {
    m.set("xi_plus", std::string("undefined"));
    return;
  }
  m.set("xi_plus", amplification_exponent(c.delta, c.Delta, c.n_quad));
  const auto [transmit, confine] = confinement_prediction(c.delta, c.Delta);
  m.set("predicted_transmit", transmit);
  m.set("predicted_confine", confine);
}

void cmd_spectrum(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ModelSpec model{c.delta, c.Delta, c.flux};
  CsvWriter csv(ctx.path("spectrum.csv"), {"k", "eps_plus_re", "eps_plus_im", "eps_minus_re",
                                           "eps_minus_im"});
  for (double k : k_grid(c.n_k)) {
    const Complex e = band_energy(model, k, Band::plus);
    csv.field(k).field(e.real()).field(e.imag()).field(-e.real()).field(-e.imag()).end_row();
  }
  const RealityReport rep = spectrum_reality(model, c.n_k);
  auto& m = ctx.summary.manifest;
  m.set("reality", std::string(reality_name(rep.classification)));
  m.set("reality_min_margin", rep.min_margin);
  m.set("reality_k_at_min", rep.k_at_min);
  m.set("n_cells", c.n_cells);

  if (2 * c.n_cells <= 4096) {
    const Eigen::VectorXcd real_space = eigenvalues(build_ssh_ring(ring_spec(c)));
    Eigen::VectorXcd bloch(2 * c.n_cells);
    int i = 0;
    for (double k : k_grid(c.n_cells)) {
      const Complex e = band_energy(model, k, Band::plus);
      bloch[i++] = e;
      bloch[i++] = -e;
    }
    m.set("real_space_vs_bloch_max_mismatch", spectrum_distance(real_space, bloch));
    CsvWriter ev(ctx.path("ring_eigenvalues.csv"), {"re", "im"});
    std::vector<Complex> sorted(real_space.data(), real_space.data() + real_space.size());
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (const Complex& e : sorted) ev.field(e.real()).field(e.imag()).end_row();
  }
}

void cmd_zak(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ModelSpec model{c.delta, c.Delta, c.flux};
  CsvWriter csv(ctx.path("zak.csv"), {"method", "band", "re", "im", "n"});
  for (Band b : {Band::plus, Band::minus}) {
    std::vector<ZakResult> results;
    results.push_back(zak_closed_form(c.delta, c.Delta, b, c.n_quad));
    results.push_back(zak_quadrature(model, b, c.n_quad));
    results.push_back(zak_wilson_loop(model, b, c.n_k, c.tolerance));
    for (const auto& r : results)
      csv.field(method_name(r.method)).field(band_name(b)).field(r.value.real())
          .field(r.value.imag()).field(r.n_k).end_row();
    const AdiabaticPhase g = adiabatic_phase(model, b, model.flux + kPi, c.n_quad);
    csv.field("adiabatic_phase").field(band_name(b)).field(g.gamma.real()).field(g.gamma.imag())
        .field(c.n_quad).end_row();
  }
  const ZakResult closed = zak_closed_form(c.delta, c.Delta, Band::plus, c.n_quad);
  const ZakResult wilson = zak_wilson_loop(model, Band::plus, c.n_k, c.tolerance);
  auto& m = ctx.summary.manifest;
  m.set("zak_plus_re", closed.value.real());
  m.set("zak_plus_im", closed.value.imag());
  m.set("wilson_vs_closed_abs", std::abs(wilson.value - closed.value));
}

void cmd_evolve(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const FluxProtocol protocol = flux_protocol(c);
  protocol.validate();
  SshRingSpec ring = ring_spec(c);
  ring.flux_per_bond = protocol.flux(0.0);
  const LatticeModel model = ssh_ring_model(ring);
  const Band band = parse_band(c.band);
  const WavepacketSpec wp = wavepacket_spec(c);

  StateVector psi0;
  double k_c = wp.momentum;
  if (c.packet == "band") {
    psi0 = make_band_gwp(ring, band, wp);
  } else {
    const Wavepacket g = make_gwp(wp, 2 * ring.n_cells);
    ctx.summary.manifest.set("tails_truncated", std::string(g.tails_truncated() ? "yes" : "no"));
    psi0 = g.amplitudes;
    k_c = 2.0 * wp.momentum;  // site momentum to cell momentum
  }
  const BandWeights w0 = band_weights(ring, psi0);
  const double T = c.total_time > 0.0 ? c.total_time : protocol.completion_time();

  const double snap_every = c.snapshot_interval;
  std::unique_ptr<CsvWriter> snaps;
  if (snap_every > 0.0) snaps = std::make_unique<CsvWriter>(ctx.path("snapshots.csv"),
                                                            std::vector<std::string>{"t", "site", "prob"});
  double next_snap = 0.0;
  EvolveOptions opt;
  opt.sample_interval = c.sample_interval;
  opt.ring_center = true;
  opt.tolerance = c.tolerance;
  opt.observer = [&](double t, const StateVector& psi) {
    if (!snaps || t + 1e-9 < next_snap) return;
    next_snap += snap_every;
    for (Eigen::Index j = 0; j < psi.size(); ++j)
      snaps->field(t).field(static_cast<long long>(j + 1)).field(std::norm(psi[j])).end_row();
  };
  const EvolutionResult res = evolve(model, protocol, psi0, T, c.dt, opt);

  std::vector<double> fluxes;
  for (double t : res.times) fluxes.push_back(protocol.flux(t));
  const std::vector<double> predicted =
      integrate_trajectory(ring, k_c, protocol, res.center_traj.front(), res.times, band);
  CsvWriter csv(ctx.path("evolution.csv"), {"t", "flux", "dirac_norm", "center", "predicted_center"});
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    csv.field(res.times[i]).field(fluxes[i]).field(res.dirac_norm[i]).field(res.center_traj[i])
        .field(predicted[i]).end_row();
  }

  const PhaseLedger ledger = ring_phase_ledger(ring, k_c, protocol, T, band, c.n_quad);
  auto& m = ctx.summary.manifest;
  m.set("n_cells", c.n_cells);
  m.set("packet", c.packet);
  m.set("band", c.band);
  m.set("center", c.center);
  m.set("width", c.width);
  m.set("momentum", c.momentum);
  m.set("protocol", c.protocol);
  m.set("rate", c.rate);
  m.set("erf_scale", c.erf_scale);
  m.set("erf_center", c.erf_center);
  m.set("total_time", T);
  m.set("dt_used", res.dt);
  m.set("initial_weight_plus", w0.plus);
  m.set("initial_weight_minus", w0.minus);
  m.set("final_dirac_norm", res.dirac_norm.back());
  m.set("predicted_dirac_norm", std::exp(2.0 * ledger.amplification));
  m.set("dynamic_phase", ledger.dynamic_phase);
  m.set("adiabatic_phase_re", ledger.adiabatic_phase.real());
  m.set("adiabatic_phase_im", ledger.adiabatic_phase.imag());
  m.set("amplification", ledger.amplification);
  m.set("fidelity_abs", std::abs(fidelity(psi0, res.final_state)));
  m.set("center_start", res.center_traj.front());
  m.set("center_end", res.center_traj.back());
  const auto [lo, hi] = std::minmax_element(res.center_traj.begin(), res.center_traj.end());
  m.set("amplitude_measured", *hi - *lo);
  const auto [plo, phi] = std::minmax_element(predicted.begin(), predicted.end());
  m.set("amplitude_predicted", *phi - *plo);
  m.set("center_end_predicted", predicted.back());
  m.set("convergence_error", res.convergence_error);
}

void cmd_scatter(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const ScatterScenario s = scatter_scenario(c);
  const ScatterReport r = run_scenario(s, c.dt);
  CsvWriter csv(ctx.path("scatter.csv"), {"t", "prob_A", "prob_ring", "prob_D", "virtual_a",
                                          "virtual_b", "dirac_norm"});
  for (std::size_t i = 0; i < r.times.size(); ++i)
    csv.field(r.times[i]).field(r.prob_a[i]).field(r.prob_ring[i]).field(r.prob_d[i])
        .field(r.virtual_a_weight[i]).field(r.virtual_b_weight[i]).field(r.dirac_norm[i]).end_row();
  CsvWriter sum(ctx.path("summary.csv"),
                {"transmission", "confinement", "reflection", "confined_share_at_impulse_end",
                 "predicted_transmit", "predicted_confine"});
  sum.field(r.transmission).field(r.confinement).field(r.reflection)
      .field(r.confined_share_at_impulse_end).field(r.predicted_transmit)
      .field(r.predicted_confine).end_row();

  auto& m = ctx.summary.manifest;
  m.set("n_a", c.n_a);
  m.set("n_b", c.n_b);
  m.set("n_d", c.n_d);
  m.set("center", c.center);
  m.set("width", c.width);
  m.set("momentum", c.momentum);
  m.set("protocol", c.protocol);
  m.set("rate", c.rate);
  m.set("timing", c.timing);
  m.set("trigger_site", c.trigger_site);
  m.set("total_time", c.total_time);
  m.set("arrival_time", r.arrival_time);
  m.set("impulse_start", r.impulse_start);
  m.set("impulse_end", r.impulse_end);
  m.set("max_imag_energy", r.max_imag_energy);
  m.set("transmission", r.transmission);
  m.set("confinement", r.confinement);
  m.set("reflection", r.reflection);
  m.set("confined_share_at_impulse_end", r.confined_share_at_impulse_end);
  m.set("final_dirac_norm", r.dirac_norm.back());
  m.set("convergence_error", r.convergence_error);
}

void cmd_network_check(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  std::vector<double> fluxes = {0.0, 0.4, kPi};
  if (std::find(fluxes.begin(), fluxes.end(), c.flux) == fluxes.end()) fluxes.push_back(c.flux);
  CsvWriter csv(ctx.path("network_check.csv"),
                {"flux", "spectrum_mismatch", "transform_mismatch", "unitarity_error", "t_ad_re",
                 "t_bd_im", "pass"});
  bool all = true;
  double worst = 0.0;
  for (double f : fluxes) {
    NetworkSpec spec = network_spec(c);
    spec.flux_per_bond = f;
    const HamiltonianMatrix h = build_network(spec);
    const VirtualDecomposition v = virtual_decompose(spec);
    const HamiltonianMatrix assembled = v.assembled();
    const BasisMap u = virtual_basis_map(spec);
    const double spec_gap = spectrum_distance(eigenvalues(h), eigenvalues(assembled));
    const double transform = (u.u * h.entries * u.u.adjoint() - assembled.entries).cwiseAbs().maxCoeff();
    const auto n = u.u.rows();
    const double unitarity =
        (u.u * u.u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    const bool pass = spec_gap < 1e-10 && transform < 1e-12 && unitarity < 1e-12;
    all = all && pass;
    worst = std::max(worst, spec_gap);
    csv.field(f).field(spec_gap).field(transform).field(unitarity).field(v.t_ad.real())
        .field(v.t_bd.imag()).field(pass ? "yes" : "no").end_row();
  }
  ctx.summary.manifest.set("n_a", c.n_a);
  ctx.summary.manifest.set("n_b", c.n_b);
  ctx.summary.manifest.set("n_d", c.n_d);
  ctx.summary.manifest.set("worst_spectrum_mismatch", worst);
  ctx.summary.manifest.set("network_check", std::string(all ? "pass" : "fail"));
  if (!all) throw NumericalError("network and virtual spectra disagree");
}

}  // namespace

RunSummary run(const RunConfig& config) {
  validate(config);
  Context ctx{config, fs::path(config.output_dir), {}};
  std::error_code ec;
  fs::create_directories(ctx.dir, ec);
  if (ec) throw IoError("cannot create " + config.output_dir + ": " + ec.message());

  record_config(ctx.summary.manifest, config);
  record_prediction(ctx.summary.manifest, config);
  if (config.command == "spectrum") cmd_spectrum(ctx);
  else if (config.command == "zak") cmd_zak(ctx);
  else if (config.command == "evolve") cmd_evolve(ctx);
  else if (config.command == "scatter") cmd_scatter(ctx);
  else cmd_network_check(ctx);

  ctx.summary.manifest.write((ctx.dir / "manifest.txt").string());
  ctx.summary.files.push_back("manifest.txt");
  return ctx.summary;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 3;
  if (dynamic_cast<const IoError*>(&e)) return 4;
  return 1;
}

}  // namespace nhzak
