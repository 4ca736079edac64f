// lowphy command line: verify kernel numerics, run the cycle-count sweep,
// plot the sweep as an SVG bar chart, and print speedup tables.
//
// Exit codes: 0 success, 1 runtime or check failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lowphy/lowphy.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

double rel_fro(const lowphy::ComplexMatrix& got, const lowphy::ComplexMatrix& want) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) {
    diff += std::norm(got.data()[k] - want.data()[k]);
    ref += std::norm(want.data()[k]);
  }
  return ref == 0.0 ? std::sqrt(diff) : std::sqrt(diff / ref);
}

double rel_l2(const std::vector<lowphy::cx>& got, const std::vector<lowphy::cx>& want) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) {
    diff += std::norm(got[k] - want[k]);
    ref += std::norm(want[k]);
  }
  return ref == 0.0 ? std::sqrt(diff) : std::sqrt(diff / ref);
}

// ---------------------------------------------------------------------------
// verify

struct CheckOutcome {
  std::string name;
  bool pass;
  std::string detail;
};

class Verifier {
 public:
  explicit Verifier(std::uint64_t seed) : seed_(seed), presets_(lowphy::default_presets()) {}

  void check(const std::string& name, double err, double tol) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "err=%.3e tol=%.1e", err, tol);
    results_.push_back(CheckOutcome{name, err < tol, buf});
  }

  void run_lse(std::size_t size) {
    const lowphy::LseInputs in = lowphy::make_lse_inputs(seed_, size);
    const lowphy::ComplexMatrix ref = lowphy::lse_estimate_ref(in.obs, in.pilot);
    check(tag("lse", size, "round-trip"), rel_fro(ref, in.planted_h), 1e-9);

    double worst = 0.0;
    for (const lowphy::VectorConfig& cfg : presets_) {
      lowphy::VectorContext ctx(cfg);
      worst = std::max(worst, rel_fro(lowphy::lse_estimate_vec(ctx, in.obs, in.pilot), ref));
    }
    check(tag("lse", size, "ref-vec-agreement"), worst, 1e-9);
  }

  void run_mmse(std::size_t size) {
    const lowphy::MmseInputs in = lowphy::make_mmse_inputs(seed_, size);

    const lowphy::ChannelStats noiseless{in.stats.r_h, 0.0};
    const lowphy::ComplexMatrix ls = lowphy::lse_estimate_ref(in.obs, in.pilot);
    check(tag("mmse", size, "sigma0-equals-lse"),
          rel_fro(lowphy::mmse_estimate_ref(in.obs, in.pilot, noiseless), ls), 1e-10);

    // unitary pilot (phased permutation), R_H = I: filter shrinks by 1/(1+sigma2)
    lowphy::SplitMix64 rng(lowphy::mix_seed(seed_, "verify-shrink", size));
    lowphy::ComplexMatrix xu(size, size);
    std::vector<std::size_t> perm(size);
    for (std::size_t i = 0; i < size; ++i) perm[i] = i;
    for (std::size_t i = size; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.next() % i]);
    for (std::size_t i = 0; i < size; ++i)
      xu(i, perm[i]) = std::polar(1.0, std::numbers::pi * rng.uniform_pm1());
    const lowphy::Observation yobs{lowphy::random_matrix(rng, size, size)};
    const double sigma2 = 0.5;
    const lowphy::ChannelStats shrink{lowphy::ComplexMatrix::identity(size), sigma2};
    const lowphy::ComplexMatrix h_ls =
        lowphy::lse_estimate_ref(yobs, lowphy::PilotBlock{xu});
    const lowphy::ComplexMatrix out =
        lowphy::mmse_estimate_ref(yobs, lowphy::PilotBlock{xu}, shrink);
    const double want = lowphy::frobenius_norm(h_ls) / (1.0 + sigma2);
    check(tag("mmse", size, "shrinkage-norm"),
          std::abs(lowphy::frobenius_norm(out) - want) / want, 1e-10);

    const lowphy::ComplexMatrix ref =
        lowphy::mmse_estimate_ref(in.obs, in.pilot, in.stats);
    double worst = 0.0;
    for (const lowphy::VectorConfig& cfg : presets_) {
      lowphy::VectorContext ctx(cfg);
      worst = std::max(
          worst, rel_fro(lowphy::mmse_estimate_vec(ctx, in.obs, in.pilot, in.stats), ref));
    }
    check(tag("mmse", size, "ref-vec-agreement"), worst, 1e-9);
  }

  void run_zf(std::size_t size) {
    const lowphy::ComplexMatrix h = lowphy::make_zf_channel(seed_, size);
    const lowphy::ComplexMatrix w = lowphy::zf_precoder_ref(h);
    check(tag("zf", size, "multiply-back"),
          rel_fro(lowphy::mat_mul(h, w), lowphy::ComplexMatrix::identity(size)), 1e-8);

    double worst = 0.0;
    for (const lowphy::VectorConfig& cfg : presets_) {
      lowphy::VectorContext ctx(cfg);
      worst = std::max(worst, rel_fro(lowphy::zf_precoder_vec(ctx, h), w));
    }
    check(tag("zf", size, "ref-vec-agreement"), worst, 1e-9);
  }

  void run_fft(std::size_t n) {
    const lowphy::FftPlan plan(n);

    std::vector<lowphy::cx> impulse(n);
    impulse[0] = 1.0;
    const std::vector<lowphy::cx> spectrum = lowphy::fft_radix4_ref(plan, impulse);
    check(tag("fft", n, "impulse"),
          rel_l2(spectrum, std::vector<lowphy::cx>(n, 1.0)), 1e-12);

    const std::vector<lowphy::cx> x = lowphy::make_fft_input(seed_, n);
    const std::vector<lowphy::cx> fx = lowphy::fft_radix4_ref(plan, x);
    double ein = 0.0, eout = 0.0;
    for (const lowphy::cx& z : x) ein += std::norm(z);
    for (const lowphy::cx& z : fx) eout += std::norm(z);
    check(tag("fft", n, "parseval"),
          std::abs(eout - static_cast<double>(n) * ein) / (static_cast<double>(n) * ein),
          1e-9);

    check(tag("fft", n, "round-trip"), rel_l2(lowphy::ifft_radix4_ref(plan, fx), x), 1e-9);

    double worst = 0.0;
    for (const lowphy::VectorConfig& cfg : presets_) {
      lowphy::VectorContext ctx(cfg);
      worst = std::max(worst, rel_l2(lowphy::fft_radix4_vec(ctx, plan, x), fx));
      lowphy::VectorContext ctx2(cfg);
      worst = std::max(worst, rel_l2(lowphy::ifft_radix4_vec(ctx2, plan, fx),
                                     lowphy::ifft_radix4_ref(plan, fx)));
    }
    check(tag("fft", n, "ref-vec-agreement"), worst, 1e-9);
  }

  void run_beam(std::size_t size) {
    const lowphy::SteeringArrayConfig cfg = lowphy::make_beam_config(seed_, size);
    const lowphy::ComplexMatrix h = lowphy::build_steered_channel_ref(cfg);
    const lowphy::BeamWeights bw = lowphy::beam_weights_ref(h);
    const lowphy::ComplexMatrix w = lowphy::beam_matrix(bw);
    check(tag("beam", size, "reconstruction"),
          rel_fro(lowphy::mat_mul(h, w),
                  lowphy::ComplexMatrix::identity(cfg.users.size())),
          1e-8);

    double worst = 0.0;
    for (const lowphy::VectorConfig& mcfg : presets_) {
      lowphy::VectorContext ctx(mcfg);
      worst = std::max(worst, rel_fro(lowphy::build_steered_channel_vec(ctx, cfg), h));
      lowphy::VectorContext ctx2(mcfg);
      worst = std::max(
          worst, rel_fro(lowphy::beam_matrix(lowphy::beam_weights_vec(ctx2, h)), w));
    }
    check(tag("beam", size, "ref-vec-agreement"), worst, 1e-9);
  }

  void run_steering_closed_forms() {
    const std::vector<lowphy::cx> broadside = lowphy::steering_vector_ref(8, 0.5, 0.0);
    check("steering/broadside", rel_l2(broadside, std::vector<lowphy::cx>(8, 1.0)), 1e-12);

    const std::vector<lowphy::cx> endfire =
        lowphy::steering_vector_ref(4, 0.5, std::numbers::pi / 2.0);
    std::vector<lowphy::cx> alternating{1.0, -1.0, 1.0, -1.0};
    check("steering/endfire-alternation", rel_l2(endfire, alternating), 1e-12);

    lowphy::SteeringArrayConfig one_user;
    one_user.num_antennas = 8;
    one_user.users = {lowphy::UserPaths{{lowphy::PathComponent{0.0, 1.0}}}};
    const lowphy::BeamWeights bw =
        lowphy::beam_weights_ref(lowphy::build_steered_channel_ref(one_user));
    double err = 0.0;
    for (const lowphy::AntennaWeight& aw : bw.users[0]) {
      err = std::max(err, std::abs(aw.amplitude - 0.125));
      err = std::max(err, std::abs(aw.phase_rad));
    }
    check("beam/broadside-weights", err, 1e-12);
  }

  const std::vector<CheckOutcome>& results() const { return results_; }

 private:
  static std::string tag(const char* kernel, std::size_t size, const char* what) {
    return std::string(kernel) + "/" + std::to_string(size) + "/" + what;
  }

  std::uint64_t seed_;
  std::vector<lowphy::VectorConfig> presets_;
  std::vector<CheckOutcome> results_;
};

int cmd_verify(const std::vector<std::string>& kernels,
               const std::vector<std::size_t>& sizes,
               const std::vector<std::size_t>& fft_sizes, std::uint64_t seed) {
  Verifier verifier(seed);
  for (const std::string& k : kernels) {
    if (k == "fft") {
      for (const std::size_t n : fft_sizes) verifier.run_fft(n);
      continue;
    }
    for (const std::size_t s : sizes) {
      if (k == "lse") verifier.run_lse(s);
      else if (k == "mmse") verifier.run_mmse(s);
      else if (k == "zf") verifier.run_zf(s);
      else verifier.run_beam(s);
    }
    if (k == "beam") verifier.run_steering_closed_forms();
  }

  std::size_t failed = 0;
  for (const CheckOutcome& c : verifier.results()) {
    if (c.pass) {
      std::printf("PASS %s (%s)\n", c.name.c_str(), c.detail.c_str());
    } else {
      std::printf("FAIL %s (%s)\n", c.name.c_str(), c.detail.c_str());
      ++failed;
    }
  }
  std::printf("%zu checks, %zu failed\n", verifier.results().size(), failed);
  return failed == 0 ? kOk : kFailure;
}

// ---------------------------------------------------------------------------
// bench / plot / speedup

int cmd_bench(const lowphy::SweepSpec& spec, const std::string& out_path) {
  lowphy::SweepResult result;
  try {
    result = lowphy::run_sweep(spec);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }

  std::string text = "# lowphy bench, seed=" + std::to_string(spec.seed) + "\n";
  text += lowphy::emit_csv(result.records);
  if (!write_file(out_path, text)) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return kFailure;
  }

  std::printf("wrote %s: %zu records, %zu failed points\n", out_path.c_str(),
              result.records.size(), result.failed_points);
  if (!result.skipped_pairs.empty()) {
    std::printf("skipped invalid (vlen, lanes) pairs:");
    for (const auto& [vlen, lanes] : result.skipped_pairs)
      std::printf(" (%llu, %llu)", static_cast<unsigned long long>(vlen),
                  static_cast<unsigned long long>(lanes));
    std::printf("\n");
  }
  if (result.beam_build_cycles + result.beam_weight_cycles > 0)
    std::printf("beam cycle split across sweep points: channel build %llu, "
                "precode+weights %llu\n",
                static_cast<unsigned long long>(result.beam_build_cycles),
                static_cast<unsigned long long>(result.beam_weight_cycles));
  return kOk;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path, bool log_scale) {
  const std::optional<std::string> text = read_file(csv_path);
  if (!text) {
    std::fprintf(stderr, "error: cannot read %s\n", csv_path.c_str());
    return kFailure;
  }
  std::vector<lowphy::BenchRecord> records;
  try {
    records = lowphy::parse_csv(*text);
  } catch (const lowphy::csv_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  if (records.empty()) {
    std::fprintf(stderr, "error: %s has no data rows\n", csv_path.c_str());
    return kFailure;
  }
  const std::string svg = lowphy::emit_svg_chart(records, lowphy::ChartOptions{log_scale});
  if (!write_file(out_path, svg)) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return kFailure;
  }
  std::printf("wrote %s\n", out_path.c_str());
  return kOk;
}

int cmd_speedup(const std::string& csv_path, std::uint64_t baseline_vlen,
                std::uint64_t baseline_lanes) {
  const std::optional<std::string> text = read_file(csv_path);
  if (!text) {
    std::fprintf(stderr, "error: cannot read %s\n", csv_path.c_str());
    return kFailure;
  }
  try {
    const std::vector<lowphy::BenchRecord> records = lowphy::parse_csv(*text);
    const std::vector<lowphy::SpeedupRow> rows =
        lowphy::speedup_table(records, baseline_vlen, baseline_lanes);
    std::printf("%-6s %6s %6s %6s %9s\n", "kernel", "size", "vlen", "lanes", "speedup");
    for (const lowphy::SpeedupRow& r : rows)
      std::printf("%-6s %6zu %6llu %6llu %9.2f\n", r.kernel.c_str(), r.size,
                  static_cast<unsigned long long>(r.vlen_bits),
                  static_cast<unsigned long long>(r.lanes), r.speedup);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LOW-PHY kernels on an abstract vector machine: verify numerics, "
               "sweep cycle counts, plot and compare"};
  app.require_subcommand(1);

  const std::vector<std::string> kernel_names = lowphy::known_kernels();

  // verify
  auto* verify = app.add_subcommand("verify", "run kernel correctness and "
                                              "reference/vectorized agreement checks");
  std::vector<std::string> v_kernels = kernel_names;
  std::vector<std::size_t> v_sizes{16, 32};
  std::vector<std::size_t> v_fft_sizes{64, 256, 1024};
  std::uint64_t v_seed = 42;
  verify->add_option("--kernel,--kernels", v_kernels, "kernels to verify")
      ->delimiter(',')
      ->check(CLI::IsMember(kernel_names));
  verify->add_option("--size,--sizes", v_sizes, "matrix sizes")
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  verify->add_option("--fft-sizes", v_fft_sizes, "FFT lengths (powers of 4)")
      ->delimiter(',');
  verify->add_option("--seed", v_seed, "input generator seed");

  // bench
  auto* bench = app.add_subcommand("bench", "run the cycle-count sweep and write CSV");
  std::string b_spec_path, b_out = "bench.csv";
  std::vector<std::string> b_kernels;
  std::vector<std::size_t> b_sizes, b_fft_sizes;
  std::vector<std::uint64_t> b_vlens, b_lanes;
  std::uint64_t b_seed = 0;
  bool b_seed_set = false;
  bench->add_option("--spec", b_spec_path, "sweep spec file (key = v1,v2 lines)");
  bench->add_option("--out", b_out, "output CSV path");
  bench->add_option("--kernel,--kernels", b_kernels, "kernels to sweep")
      ->delimiter(',')
      ->check(CLI::IsMember(kernel_names));
  bench->add_option("--size,--sizes", b_sizes, "matrix sizes")->delimiter(',');
  bench->add_option("--fft-sizes", b_fft_sizes, "FFT lengths")->delimiter(',');
  bench->add_option("--vlens", b_vlens, "VLEN values in bits")->delimiter(',');
  bench->add_option("--lanes", b_lanes, "lane counts")->delimiter(',');
  bench->add_option("--seed", b_seed, "input generator seed")
      ->each([&](const std::string&) { b_seed_set = true; });

  // plot
  auto* plot = app.add_subcommand("plot", "render a bench CSV as an SVG bar chart");
  std::string p_csv, p_out = "chart.svg";
  bool p_log = false;
  plot->add_option("csv", p_csv, "input CSV from bench")->required();
  plot->add_option("--out", p_out, "output SVG path");
  plot->add_flag("--log-scale", p_log, "log-10 y axis");

  // speedup
  auto* speedup = app.add_subcommand("speedup", "print speedups against a baseline "
                                                "(vlen, lanes) point");
  std::string s_csv;
  std::uint64_t s_vlen = 512, s_lanes = 2;
  speedup->add_option("csv", s_csv, "input CSV from bench")->required();
  speedup->add_option("--baseline-vlen", s_vlen, "baseline VLEN in bits");
  speedup->add_option("--baseline-lanes", s_lanes, "baseline lane count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand(verify)) {
      for (const std::size_t n : v_fft_sizes)
        if (!lowphy::is_power_of_four(n)) {
          std::fprintf(stderr, "error: fft size %zu is not a power of 4\n", n);
          return kUsage;
        }
      return cmd_verify(v_kernels, v_sizes, v_fft_sizes, v_seed);
    }
    if (app.got_subcommand(bench)) {
      lowphy::SweepSpec spec;
      if (!b_spec_path.empty()) {
        const std::optional<std::string> text = read_file(b_spec_path);
        if (!text) {
          std::fprintf(stderr, "error: cannot read spec file %s\n", b_spec_path.c_str());
          return kUsage;
        }
        try {
          spec = lowphy::parse_sweep_spec(*text);
        } catch (const lowphy::spec_parse_error& e) {
          std::fprintf(stderr, "error: %s\n", e.what());
          return kUsage;
        }
      }
      if (!b_kernels.empty()) spec.kernels = b_kernels;
      if (!b_sizes.empty()) spec.sizes = b_sizes;
      if (!b_fft_sizes.empty()) spec.fft_sizes = b_fft_sizes;
      if (!b_vlens.empty()) spec.vlens = b_vlens;
      if (!b_lanes.empty()) spec.lanes = b_lanes;
      if (b_seed_set) spec.seed = b_seed;
      return cmd_bench(spec, b_out);
    }
    if (app.got_subcommand(plot)) return cmd_plot(p_csv, p_out, p_log);
    if (app.got_subcommand(speedup)) return cmd_speedup(s_csv, s_vlen, s_lanes);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kUsage;
}
