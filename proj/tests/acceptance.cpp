// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oamfwm/cli.hpp"
#include "oamfwm/deutsch.hpp"
#include "oamfwm/fwm.hpp"
#include "oamfwm/gates.hpp"
#include "oamfwm/lgmode.hpp"
#include "oamfwm/render.hpp"
#include "oracles.hpp"

using namespace oamfwm;
namespace fs = std::filesystem;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

oracle::Function function_of(GateKind kind) {
  switch (kind) {
    case GateKind::I: return oracle::Function::Zero;
    case GateKind::NOT: return oracle::Function::One;
    case GateKind::CNOT: return oracle::Function::Identity;
    case GateKind::ZCNOT: return oracle::Function::Negation;
  }
  return oracle::Function::Zero;
}

double angle_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi)); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome truth_tables() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int matched = 0;
  for (GateKind kind : kAllGates) {
    const GateSetup setup = build_gate(kind);
    for (int c = 0; c <= 1; ++c) {
      for (int t = 0; t <= 1; ++t) {
        const auto out = apply_gate(setup, encode_logical(c, setup.target_convention, Role::Control),
                                    encode_logical(t, setup.target_convention, Role::Target));
        const auto amps = logical_amplitudes(out.signal);
        const int expected = t ^ oracle::evaluate(function_of(kind), c);
        const double p = std::norm(expected ? amps.one : amps.zero);
        if (std::abs(p - 1.0) < 1e-9) ++matched;
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(matched == 16, std::to_string(matched) + "/16 cases");
  o.require(seconds < 1.0, "took " + fmt("%.3f s", seconds));
  if (o.pass) o.detail = "16/16 cases, " + fmt("%.4f s", seconds);
  return o;
}

Outcome superposition_action() {
  Outcome o;
  const GateSetup setup = build_gate(GateKind::CNOT);
  double worst = 1.0;
  for (int k = 0; k < 17; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 17.0;
    const Complex alpha = std::cos(theta / 2.0);
    const Complex beta = std::sin(theta / 2.0);
    const auto target = from_logical({alpha, beta}, setup.target_convention, Role::Target);
    for (int c = 0; c <= 1; ++c) {
      const auto out = apply_gate(setup, encode_logical(c, setup.target_convention, Role::Control), target);
      // Compared after the +-1 fold: the signal's |1> charge depends on the control.
      const auto amps = logical_amplitudes(out.signal);
      const Complex e0 = c == 0 ? alpha : beta;
      const Complex e1 = c == 0 ? beta : alpha;
      const double f = std::norm(std::conj(e0) * amps.zero + std::conj(e1) * amps.one);
      worst = std::min(worst, f);
    }
  }
  o.require(worst >= 1.0 - 1e-12, "min fidelity " + fmt("%.15f", worst));
  if (o.pass) o.detail = "17 points x 2 controls, 1 - min fidelity = " + fmt("%.2e", 1.0 - worst);
  return o;
}

Outcome deutsch_reproduction() {
  Outcome o;
  const Verdict verdicts[] = {Verdict::Constant, Verdict::Constant, Verdict::Balanced, Verdict::Balanced};
  const int signs[] = {1, -1, 1, -1};
  std::size_t i = 0;
  for (GateKind kind : kAllGates) {
    const auto r = run_deutsch(kind);
    const std::string name(to_string(kind));
    o.require(r.verdict == verdicts[i], name + " verdict");
    o.require(r.verdict == oracle_classify(kind), name + " disagrees with the classical oracle");
    o.require(r.global_sign == signs[i], name + " global sign");
    const double winner = r.verdict == Verdict::Constant ? r.p0 : r.p1;
    o.require(std::abs(winner - 1.0) < 1e-9, name + " winning probability " + fmt("%.12f", winner));
    const auto factors = factor_product(r.psi3.logical);
    const double f = std::norm(kS * factors.target.zero - kS * factors.target.one);
    o.require(f >= 1.0 - 1e-12, name + " target factor fidelity " + fmt("%.15f", f));
    ++i;
  }
  if (o.pass) o.detail = "verdicts C,C,B,B; signs +,-,+,-; p_win = 1; target (|0>-|1>)/sqrt2";
  return o;
}

Outcome lg_numerics() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const BeamParams beam{};
  double worst_self = 0.0;
  double worst_cross = 0.0;
  for (double z : {0.0, beam.rayleigh_zR}) {
    const GridSpec grid{512, 6.0, z};
    std::vector<FieldGrid> fields;
    for (int l = -2; l <= 2; ++l) fields.push_back(sample_field(OAMSuperposition::basis(l), beam, grid));
    for (std::size_t a = 0; a < fields.size(); ++a) {
      for (std::size_t b = 0; b < fields.size(); ++b) {
        const Complex v = overlap(fields[a], fields[b]);
        if (a == b) {
          worst_self = std::max(worst_self, std::abs(v - 1.0));
        } else {
          worst_cross = std::max(worst_cross, std::abs(v));
        }
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(worst_self < 1e-6, "self-overlap error " + fmt("%.3e", worst_self));
  o.require(worst_cross < 1e-6, "cross overlap " + fmt("%.3e", worst_cross));
  o.require(seconds < 30.0, "took " + fmt("%.1f s", seconds));
  if (o.pass) {
    o.detail = "|self-1| " + fmt("%.2e", worst_self) + ", |cross| " + fmt("%.2e", worst_cross) + ", " +
               fmt("%.2f s", seconds);
  }
  return o;
}

Outcome pattern_statistics() {
  Outcome o;
  const BeamParams beam{};
  const GridSpec grid{512, 6.0, 0.0};
  const auto gauss = pattern_stats(render_state(OAMSuperposition::basis(0), beam, grid));
  o.require(gauss.center_intensity_ratio > 0.99, "l=0 center ratio " + fmt("%.4f", gauss.center_intensity_ratio));
  for (int l : {1, -1}) {
    const auto ring = pattern_stats(render_state(OAMSuperposition::basis(l), beam, grid));
    o.require(ring.center_intensity_ratio < 0.01, "|l|=1 center ratio " + fmt("%.4f", ring.center_intensity_ratio));
    o.require(std::abs(ring.ring_radius - kS) < 0.01 * kS, "ring radius " + fmt("%.5f", ring.ring_radius));
  }

  const double bin = 2.0 * std::numbers::pi / kAzimuthalBins;
  const auto constant = testing_state(run_deutsch(GateKind::I), Stage::Psi2);
  const auto balanced = testing_state(run_deutsch(GateKind::CNOT), Stage::Psi2);
  const double az_c = pattern_stats(render_state(constant, beam, grid)).azimuth_of_max;
  const double az_b = pattern_stats(render_state(balanced, beam, grid)).azimuth_of_max;
  const double gap = angle_distance(az_c, az_b);
  o.require(std::abs(gap - std::numbers::pi) < 2.0 * bin, "azimuth gap " + fmt("%.4f", gap));

  double worst = 1.0;
  for (GateKind kind : kAllGates) {
    const auto r = run_deutsch(kind);
    const auto control = testing_state(r, Stage::Psi3);
    const int correct_l = r.verdict == Verdict::Constant ? 0 : 1;
    const FieldGrid field = sample_field(control, beam, grid);
    worst = std::min(worst, std::norm(project_onto_lg(field, correct_l, beam)));
  }
  o.require(worst >= 0.999, "psi3 projection " + fmt("%.6f", worst));
  if (o.pass) {
    o.detail = "center " + fmt("%.4f", gauss.center_intensity_ratio) + ", azimuth gap " + fmt("%.4f", gap) +
               ", psi3 projection " + fmt("%.6f", worst);
  }
  return o;
}

Outcome fwm_properties() {
  Outcome o;
  int matched = 0;
  constexpr int kSamples = 32;
  for (int l1 = -2; l1 <= 2; ++l1) {
    for (int l2 = -2; l2 <= 2; ++l2) {
      for (int l3 = -2; l3 <= 2; ++l3) {
        std::vector<Complex> ring(kSamples);
        for (int j = 0; j < kSamples; ++j) {
          const double phi = 2.0 * std::numbers::pi * j / kSamples;
          ring[j] = std::polar(1.0, (l1 + l2) * phi) * std::conj(std::polar(1.0, l3 * phi));
        }
        const int expected = oracle::dominant_harmonic(ring, 8);
        const FWMConfig config{{1.0, 0.0}, OAMSuperposition::basis(l1, Role::Pump), 1.0};
        const auto out = fwm_transform(config, OAMSuperposition::basis(l2), OAMSuperposition::basis(l3));
        if (signal_l(l1, l2, l3) == expected && out.signal.size() == 1 &&
            out.signal.coefficients().begin()->first == expected) {
          ++matched;
        }
      }
    }
  }
  o.require(matched == 125, std::to_string(matched) + "/125 triples");

  const Complex chi3{0.8, -0.3};
  const auto p1 = OAMSuperposition::basis(0, Role::Pump);
  const OAMSuperposition u({{-1, {0.3, 0.2}}, {0, {0.1, -0.5}}, {1, {0.7, 0.0}}});
  const OAMSuperposition v({{0, {-0.4, 0.4}}, {2, {0.2, 0.9}}});
  const OAMSuperposition p3({{0, {0.6, 0.1}}, {1, {-0.2, 0.7}}});
  const Complex a{0.3, -1.2};
  const Complex b{-0.7, 0.4};
  const auto lhs = mix_fields(chi3, p1, u.scaled(a) + v.scaled(b), p3);
  const auto rhs = mix_fields(chi3, p1, u, p3).scaled(a) + mix_fields(chi3, p1, v, p3).scaled(b);
  double linear = 0.0;
  for (int l = -kMaxCharge; l <= kMaxCharge; ++l) linear = std::max(linear, std::abs(lhs.amplitude(l) - rhs.amplitude(l)));
  double anti = 0.0;
  for (double theta : {0.5, 1.9, -2.7}) {
    const auto phased = mix_fields(chi3, p1, u, p3.scaled(std::polar(1.0, theta)));
    const auto expected = mix_fields(chi3, p1, u, p3).scaled(std::polar(1.0, -theta));
    for (int l = -kMaxCharge; l <= kMaxCharge; ++l) {
      anti = std::max(anti, std::abs(phased.amplitude(l) - expected.amplitude(l)));
    }
  }
  o.require(linear < 1e-12, "linearity error " + fmt("%.2e", linear));
  o.require(anti < 1e-12, "antilinearity error " + fmt("%.2e", anti));
  if (o.pass) o.detail = "125/125 triples, linear " + fmt("%.1e", linear) + ", antilinear " + fmt("%.1e", anti);
  return o;
}

Outcome efficiency_property() {
  Outcome o;
  const BeamParams beam{};
  const GridSpec grid{128, 6.0, 0.0};
  for (GateKind kind : kAllGates) {
    const std::string name(to_string(kind));
    const auto full = run_deutsch(kind);
    const auto full_stats = pattern_stats(render_state(testing_state(full, Stage::Psi2), beam, grid));
    for (double eta : {0.9, 0.5, 0.125, 1e-3}) {
      DeutschOptions options;
      options.efficiency = eta;
      const auto r = run_deutsch(kind, options);
      o.require(r.event_probability == full.event_probability * eta, name + " event probability not linear");
      o.require(r.p0_scaled == full.p0_scaled * eta && r.p1_scaled == full.p1_scaled * eta, name + " scaled p not linear");
      o.require(r.verdict == full.verdict && r.global_sign == full.global_sign, name + " verdict changed");
      o.require(r.psi2.logical == full.psi2.logical && r.psi3.logical == full.psi3.logical,
                name + " amplitudes changed");
      const auto stats = pattern_stats(render_state(testing_state(r, Stage::Psi2), beam, grid));
      o.require(stats == full_stats, name + " pattern statistics changed");
    }
  }
  if (o.pass) o.detail = "4 gates x 4 efficiencies: exact scaling, nothing else moves";
  return o;
}

Outcome determinism_and_io() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "oamfwm_acceptance";
  fs::remove_all(root);
  for (GateKind kind : kAllGates) {
    RunConfig config;
    config.gate = kind;
    config.grid = {128, 6.0, 0.0};
    config.formats = {ImageFormat::Pgm, ImageFormat::Csv};
    std::ostringstream sink;
    const std::string name(to_string(kind));
    for (const char* run : {"a", "b"}) {
      config.output_dir = (root / name / run).string();
      o.require(cmd_run(config, sink, sink) == exit_code::kOk, name + " run failed");
    }
    for (const char* f : {"result.json", "psi2_testing.pgm", "psi2_testing.csv", "psi3_testing.pgm",
                          "psi3_testing.csv"}) {
      o.require(slurp(root / name / "a" / f) == slurp(root / name / "b" / f), name + " " + f + " differs");
    }

    const RealGrid image = render_state(testing_state(run_deutsch(kind), Stage::Psi2), config.beam, config.grid);
    const fs::path dir = root / name / "a";
    o.require(read_pgm(dir / "psi2_testing.pgm").pixels == quantize(image), name + " PGM round trip");
    o.require(read_csv(dir / "psi2_testing.csv").values() == image.values(), name + " CSV round trip");
  }
  fs::remove_all(root);
  if (o.pass) o.detail = "byte-identical records and images; PGM/CSV round trips exact";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 truth tables", truth_tables},
      {"AC2 superposed target through CNOT", superposition_action},
      {"AC3 Deutsch outcomes", deutsch_reproduction},
      {"AC4 LG overlap numerics", lg_numerics},
      {"AC5 pattern statistics", pattern_statistics},
      {"AC6 FWM charge and linearity", fwm_properties},
      {"AC7 efficiency scaling", efficiency_property},
      {"AC8 determinism and IO", determinism_and_io},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
