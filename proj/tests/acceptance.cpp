// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits non-zero if any fail.
//
//   1 kernel correctness against independent oracles across seeds and sizes
//   2 reference/vectorized agreement across the machine presets
//   3 cost-model equality with the brute-force scheduler oracle
//   4 trend reproduction: monotone cycles, >= 2x from 2 -> 16 lanes
//   5 bench + plot artifacts: row counts and chart structure
//   6 byte-identical artifacts across repeated runs
//   7 closed-form steering and beam-weight cases

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "lowphy/lowphy.hpp"
#include "oracles.hpp"

using namespace lowphy;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Criterion {
  explicit Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)), start_(clock_type::now()) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      problems_.push_back(what);
    }
  }

  void finish(double budget_seconds = 0.0) {
    const double elapsed =
        std::chrono::duration<double>(clock_type::now() - start_).count();
    if (budget_seconds > 0.0 && elapsed >= budget_seconds)
      problems_.push_back("runtime " + std::to_string(elapsed) + "s over budget");
    if (problems_.empty()) {
      std::printf("PASS criterion %d: %s (%.2fs)\n", number_, title_.c_str(), elapsed);
    } else {
      ++g_failures;
      std::printf("FAIL criterion %d: %s (%.2fs)\n", number_, title_.c_str(), elapsed);
      for (const std::string& p : problems_) std::printf("     - %s\n", p.c_str());
    }
  }

 private:
  using clock_type = std::chrono::steady_clock;
  int number_;
  std::string title_;
  clock_type::time_point start_;
  std::vector<std::string> problems_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LOWPHY_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion1_kernel_correctness() {
  Criterion c(1, "kernel correctness vs independent oracles");
  for (const std::uint64_t seed : {1ULL, 42ULL, 1337ULL}) {
    for (const std::size_t size : {16u, 32u}) {
      const LseInputs lin = make_lse_inputs(seed, size);
      c.expect(oracles::rel_fro(lse_estimate_ref(lin.obs, lin.pilot), lin.planted_h) < 1e-9,
               "lse round-trip seed " + std::to_string(seed) + " size " +
                   std::to_string(size));

      const ComplexMatrix h = make_zf_channel(seed, size);
      const ComplexMatrix w = zf_precoder_ref(h);
      c.expect(frobenius_norm(mat_add(mat_mul(h, w),
                                      mat_scale(ComplexMatrix::identity(size), -1.0))) <
                   1e-8,
               "zf multiply-back seed " + std::to_string(seed));

      const MmseInputs min = make_mmse_inputs(seed, size);
      const ComplexMatrix got = mmse_estimate_ref(min.obs, min.pilot, min.stats);
      const ComplexMatrix want =
          oracles::mmse_oracle(min.obs.y, min.pilot.x, min.stats.r_h, min.stats.sigma2);
      c.expect(oracles::rel_fro(got, want) < 1e-9,
               "mmse vs solve oracle seed " + std::to_string(seed));

      const ChannelStats noiseless{min.stats.r_h, 0.0};
      c.expect(oracles::rel_fro(mmse_estimate_ref(min.obs, min.pilot, noiseless),
                                lse_estimate_ref(min.obs, min.pilot)) < 1e-10,
               "mmse sigma0 degeneracy seed " + std::to_string(seed));
    }
    for (const std::size_t n : {16u, 64u, 256u, 1024u}) {
      const FftPlan plan(n);
      const std::vector<cx> x = make_fft_input(seed, n);
      const std::vector<cx> fx = fft_radix4_ref(plan, x);
      c.expect(oracles::rel_l2(fx, oracles::naive_dft(x)) < 1e-9,
               "fft vs naive DFT n " + std::to_string(n));
      c.expect(oracles::rel_l2(ifft_radix4_ref(plan, fx), x) < 1e-9,
               "ifft(fft) identity n " + std::to_string(n));
    }
  }
  c.finish(10.0);
}

void criterion2_ref_vec_agreement() {
  Criterion c(2, "reference/vectorized agreement on every machine preset");
  const std::vector<VectorConfig> presets = default_presets();
  c.expect(presets.size() == 15, "expected 15 valid presets of the 4x4 grid");
  bool invalid_rejected = false;
  try {
    VectorConfig{512, 16}.validate();
  } catch (const std::invalid_argument&) {
    invalid_rejected = true;
  }
  c.expect(invalid_rejected, "(512, 16) must violate the config contract");

  const std::uint64_t seed = 42;
  for (const std::size_t size : {16u, 32u}) {
    const LseInputs lin = make_lse_inputs(seed, size);
    const MmseInputs min = make_mmse_inputs(seed, size);
    const ComplexMatrix zh = make_zf_channel(seed, size);
    const SteeringArrayConfig bcfg = make_beam_config(seed, size);

    const ComplexMatrix lref = lse_estimate_ref(lin.obs, lin.pilot);
    const ComplexMatrix mref = mmse_estimate_ref(min.obs, min.pilot, min.stats);
    const ComplexMatrix zref = zf_precoder_ref(zh);
    const ComplexMatrix bref = build_steered_channel_ref(bcfg);
    const ComplexMatrix wref = beam_matrix(beam_weights_ref(bref));

    for (const VectorConfig& cfg : presets) {
      const std::string where = " size " + std::to_string(size) + " vlen " +
                                std::to_string(cfg.vlen_bits) + " lanes " +
                                std::to_string(cfg.lanes);
      VectorContext c1(cfg);
      c.expect(oracles::rel_fro(lse_estimate_vec(c1, lin.obs, lin.pilot), lref) < 1e-9,
               "lse" + where);
      VectorContext c2(cfg);
      c.expect(oracles::rel_fro(mmse_estimate_vec(c2, min.obs, min.pilot, min.stats),
                                mref) < 1e-9,
               "mmse" + where);
      VectorContext c3(cfg);
      c.expect(oracles::rel_fro(zf_precoder_vec(c3, zh), zref) < 1e-9, "zf" + where);
      VectorContext c4(cfg);
      c.expect(oracles::rel_fro(build_steered_channel_vec(c4, bcfg), bref) < 1e-9,
               "steered channel" + where);
      VectorContext c5(cfg);
      c.expect(oracles::rel_fro(beam_matrix(beam_weights_vec(c5, bref)), wref) < 1e-9,
               "beam weights" + where);
    }
  }
  for (const std::size_t n : {16u, 64u, 256u, 1024u}) {
    const FftPlan plan(n);
    const std::vector<cx> x = make_fft_input(seed, n);
    const std::vector<cx> fref = fft_radix4_ref(plan, x);
    const std::vector<cx> iref = ifft_radix4_ref(plan, x);
    for (const VectorConfig& cfg : presets) {
      VectorContext c1(cfg);
      c.expect(oracles::rel_l2(fft_radix4_vec(c1, plan, x), fref) < 1e-9,
               "fft n " + std::to_string(n));
      VectorContext c2(cfg);
      c.expect(oracles::rel_l2(ifft_radix4_vec(c2, plan, x), iref) < 1e-9,
               "ifft n " + std::to_string(n));
    }
  }
  c.finish(30.0);
}

void criterion3_cost_model_oracle() {
  Criterion c(3, "strip-mined cycle totals equal the scheduler oracle exactly");
  for (const std::uint64_t lanes : {1u, 2u, 4u, 8u, 16u})
    for (const std::uint64_t vlmax : {8u, 16u, 32u, 64u}) {
      if (lanes > vlmax) continue;
      for (std::uint64_t n = 0; n <= 256; ++n) {
        VectorContext ctx(VectorConfig{vlmax * 64, lanes});
        std::uint64_t arith_cycles = 0;
        std::uint64_t done = 0;
        while (done < n) {
          const std::uint64_t vl = std::min(n - done, vlmax);
          arith_cycles += ctx.vec_arith(ArithKind::macc, vl);
          done += vl;
        }
        if (arith_cycles != oracles::strip_loop_cycles_oracle(n, vlmax, lanes, 1)) {
          c.expect(false, "n=" + std::to_string(n) + " lanes=" + std::to_string(lanes) +
                              " vlmax=" + std::to_string(vlmax));
          break;
        }
      }
    }
  c.finish();
}

void criterion4_paper_trends() {
  Criterion c(4, "cycle counts fall with lanes and VLEN; >= 2x from 2 to 16 lanes");
  const SweepResult sweep = run_sweep(SweepSpec{});
  std::map<std::tuple<std::string, std::size_t, std::uint64_t, std::uint64_t>,
           std::uint64_t>
      cycles;
  for (const BenchRecord& r : sweep.records)
    cycles[{r.kernel, r.size, r.vlen_bits, r.lanes}] = r.cycles;

  for (const BenchRecord& r : sweep.records) {
    const auto up_vlen = cycles.find({r.kernel, r.size, r.vlen_bits * 2, r.lanes});
    if (up_vlen != cycles.end() && up_vlen->second > r.cycles)
      c.expect(false, "cycles rose with VLEN at " + r.kernel + "/" +
                          std::to_string(r.size));
    const auto up_lanes = cycles.find({r.kernel, r.size, r.vlen_bits, r.lanes * 2});
    if (up_lanes != cycles.end() && up_lanes->second > r.cycles)
      c.expect(false, "cycles rose with lanes at " + r.kernel + "/" +
                          std::to_string(r.size));
  }

  // widest kernel instances: matrix kernels at size 32, fft at length 1024
  for (const std::string kernel : {"lse", "mmse", "zf", "beam", "fft"}) {
    const std::size_t size = kernel == "fft" ? 1024 : 32;
    const std::uint64_t slow = cycles.at({kernel, size, 4096, 2});
    const std::uint64_t fast = cycles.at({kernel, size, 4096, 16});
    const double speedup = static_cast<double>(slow) / static_cast<double>(fast);
    c.expect(speedup >= 2.0, kernel + " speedup 2->16 lanes was " +
                                 std::to_string(speedup));
  }
  c.finish(60.0);
}

void criterion5_artifact_structure(const fs::path& dir) {
  Criterion c(5, "bench and plot produce the full CSV and a structured chart");
  const fs::path csv = dir / "default.csv";
  const fs::path svg = dir / "default.svg";
  c.expect(run_cli("bench --out " + csv.string()) == 0, "bench exit status");
  c.expect(run_cli("plot " + csv.string() + " --out " + svg.string()) == 0,
           "plot exit status");

  const std::string text = slurp(csv);
  std::size_t data_rows = 0;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] != '#' && line.rfind("kernel,", 0) != 0) ++data_rows;

  const SweepSpec spec;
  std::size_t valid_pairs = 0;
  for (const std::uint64_t v : spec.vlens)
    for (const std::uint64_t l : spec.lanes)
      if (l <= v / VectorConfig::sew_bits) ++valid_pairs;
  const std::size_t expected =
      valid_pairs * (4 * spec.sizes.size() + spec.fft_sizes.size());
  c.expect(data_rows == expected,
           "row count " + std::to_string(data_rows) + " != " + std::to_string(expected));

  const std::string chart = slurp(svg);
  c.expect(chart.rfind("<svg", 0) == 0, "chart must begin with an <svg root");
  c.expect(chart.find("version=\"1.1\"") != std::string::npos, "SVG 1.1 version tag");
  std::size_t panels = 0;
  for (std::size_t p = chart.find("class=\"panel\""); p != std::string::npos;
       p = chart.find("class=\"panel\"", p + 1))
    ++panels;
  c.expect(panels == 5, "one panel per kernel, found " + std::to_string(panels));
  std::size_t bars = 0;
  for (std::size_t p = chart.find("class=\"bar\""); p != std::string::npos;
       p = chart.find("class=\"bar\"", p + 1))
    ++bars;
  c.expect(bars == expected, "one bar per record, found " + std::to_string(bars));
  for (const std::string lane : {"lanes=2", "lanes=4", "lanes=8", "lanes=16"})
    c.expect(chart.find(lane) != std::string::npos, "legend entry " + lane);
  c.finish();
}

void criterion6_determinism(const fs::path& dir) {
  Criterion c(6, "repeated bench and plot runs are byte-identical");
  const fs::path csv1 = dir / "det1.csv";
  const fs::path csv2 = dir / "det2.csv";
  c.expect(run_cli("bench --out " + csv1.string()) == 0, "first bench run");
  c.expect(run_cli("bench --out " + csv2.string()) == 0, "second bench run");
  const std::string t1 = slurp(csv1), t2 = slurp(csv2);
  c.expect(!t1.empty() && t1 == t2, "CSV bytes must match");

  const fs::path svg1 = dir / "det1.svg";
  const fs::path svg2 = dir / "det2.svg";
  c.expect(run_cli("plot " + csv1.string() + " --out " + svg1.string()) == 0,
           "first plot run");
  c.expect(run_cli("plot " + csv2.string() + " --out " + svg2.string()) == 0,
           "second plot run");
  const std::string s1 = slurp(svg1), s2 = slurp(svg2);
  c.expect(!s1.empty() && s1 == s2, "SVG bytes must match");
  c.finish();
}

void criterion7_closed_forms() {
  Criterion c(7, "degenerate and analytic steering cases at 1e-12");
  const std::vector<cx> broadside = steering_vector_ref(8, 0.5, 0.0);
  for (const cx& v : broadside)
    c.expect(std::abs(v - cx(1.0, 0.0)) <= 1e-12, "broadside element");

  const std::vector<cx> endfire = steering_vector_ref(4, 0.5, std::numbers::pi / 2.0);
  for (std::size_t m = 0; m < 4; ++m) {
    const double want = (m % 2 == 0) ? 1.0 : -1.0;
    c.expect(std::abs(endfire[m] - cx(want, 0.0)) <= 1e-12, "endfire alternation");
  }

  SteeringArrayConfig cfg;
  cfg.num_antennas = 8;
  cfg.users = {UserPaths{{PathComponent{0.0, 1.0}}}};
  const BeamWeights bw = beam_weights_ref(build_steered_channel_ref(cfg));
  for (const AntennaWeight& w : bw.users.at(0)) {
    c.expect(std::abs(w.amplitude - 1.0 / 8.0) <= 1e-12, "broadside amplitude 1/M");
    c.expect(std::abs(w.phase_rad) <= 1e-12, "broadside phase 0");
  }
  c.finish();
}

}  // namespace

int main() {
  const fs::path dir = "acceptance_tmp";
  fs::create_directories(dir);

  criterion1_kernel_correctness();
  criterion2_ref_vec_agreement();
  criterion3_cost_model_oracle();
  criterion4_paper_trends();
  criterion5_artifact_structure(dir);
  criterion6_determinism(dir);
  criterion7_closed_forms();

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return EXIT_SUCCESS;
  }
  std::printf("%d acceptance criteria failed\n", g_failures);
  return EXIT_FAILURE;
}
