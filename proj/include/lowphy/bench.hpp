#pragma once

// Sweep harness: run each kernel across matrix sizes, VLEN values and lane
// counts, record the cycle ledgers, and emit CSV / SVG artifacts. Cycle
// "measurement" is the deterministic ledger of the vector machine, never
// wall-clock time, so outputs are byte-stable for a fixed spec and seed.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "lowphy/input_gen.hpp"
#include "lowphy/kernels.hpp"
#include "lowphy/vector_machine.hpp"

namespace lowphy {

inline const std::vector<std::string>& known_kernels() {
  static const std::vector<std::string> k{"lse", "mmse", "fft", "zf", "beam"};
  return k;
}

/// The default sweep's machine configurations: VLEN in {512..4096} bits
/// crossed with lanes in {2..16}, keeping only pairs with lanes <= VLEN/64
/// (15 of the 16 combinations; (512, 16) is rejected by the config contract).
inline std::vector<VectorConfig> default_presets(std::uint64_t issue_overhead = 1,
                                                 std::uint64_t strided_factor = 2) {
  std::vector<VectorConfig> out;
  for (const std::uint64_t vlen : {512u, 1024u, 2048u, 4096u})
    for (const std::uint64_t lanes : {2u, 4u, 8u, 16u})
      if (lanes <= vlen / VectorConfig::sew_bits)
        out.push_back(VectorConfig{vlen, lanes, issue_overhead, strided_factor});
  return out;
}

struct SweepSpec {
  std::vector<std::string> kernels{"lse", "mmse", "fft", "zf", "beam"};
  std::vector<std::size_t> sizes{16, 32};
  std::vector<std::size_t> fft_sizes{64, 256, 1024};
  std::vector<std::uint64_t> vlens{512, 1024, 2048, 4096};
  std::vector<std::uint64_t> lanes{2, 4, 8, 16};
  std::uint64_t seed = 42;
  std::uint64_t issue_overhead = 1;
  std::uint64_t strided_factor = 2;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;

  void validate() const {
    for (const std::string& k : kernels)
      if (std::find(known_kernels().begin(), known_kernels().end(), k) ==
          known_kernels().end())
        throw std::invalid_argument("unknown kernel: " + k);
    for (const std::size_t s : sizes)
      if (s < 2) throw std::invalid_argument("matrix sizes must be >= 2");
    for (const std::size_t s : fft_sizes)
      if (!is_power_of_four(s))
        throw std::invalid_argument("fft sizes must be powers of 4");
    for (const std::uint64_t v : vlens) {
      VectorConfig probe{v, 1, issue_overhead, strided_factor};
      probe.validate();
    }
    for (const std::uint64_t l : lanes)
      if (l == 0 || !std::has_single_bit(l))
        throw std::invalid_argument("lane counts must be powers of two");
    if (strided_factor == 0)
      throw std::invalid_argument("strided_factor must be >= 1");
  }
};

struct BenchRecord {
  std::string kernel;
  std::size_t size = 0;  // matrix dimension or FFT length
  std::uint64_t vlen_bits = 0;
  std::uint64_t lanes = 0;
  std::uint64_t cycles = 0;
  std::uint64_t vector_instructions = 0;
  std::uint64_t scalar_instructions = 0;
  std::uint64_t vector_element_ops = 0;
  std::string checksum;  // Frobenius/l2 norm of the output, 6 significant
                         // digits; "failed" for aborted points

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct SweepResult {
  std::vector<BenchRecord> records;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> skipped_pairs;
  std::size_t failed_points = 0;
  // the beam kernel's cycle split, summed across its sweep points
  std::uint64_t beam_build_cycles = 0;
  std::uint64_t beam_weight_cycles = 0;
};

inline std::string format_sig6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

namespace detail {

inline double l2_norm(const std::vector<cx>& v) {
  double s = 0.0;
  for (const cx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

struct SweepTask {
  std::string kernel;
  std::size_t size;
  std::uint64_t vlen;
  std::uint64_t lanes;
};

struct KernelInputs {
  LseInputs lse;
  MmseInputs mmse;
  ComplexMatrix zf_h;
  std::vector<cx> fft_x;
  SteeringArrayConfig beam_cfg;
};

inline BenchRecord run_sweep_point(const SweepTask& t, const SweepSpec& spec,
                                   const KernelInputs& in,
                                   std::atomic<std::uint64_t>& beam_build,
                                   std::atomic<std::uint64_t>& beam_weight,
                                   std::atomic<std::size_t>& failures) {
  VectorContext ctx(VectorConfig{t.vlen, t.lanes, spec.issue_overhead,
                                 spec.strided_factor});
  std::string checksum;
  try {
    if (t.kernel == "lse") {
      checksum = format_sig6(frobenius_norm(lse_estimate_vec(ctx, in.lse.obs, in.lse.pilot)));
    } else if (t.kernel == "mmse") {
      checksum = format_sig6(
          frobenius_norm(mmse_estimate_vec(ctx, in.mmse.obs, in.mmse.pilot, in.mmse.stats)));
    } else if (t.kernel == "zf") {
      checksum = format_sig6(frobenius_norm(zf_precoder_vec(ctx, in.zf_h)));
    } else if (t.kernel == "fft") {
      const FftPlan plan(t.size);
      checksum = format_sig6(l2_norm(fft_radix4_vec(ctx, plan, in.fft_x)));
    } else {  // beam
      const ComplexMatrix h = build_steered_channel_vec(ctx, in.beam_cfg);
      const CycleLedger mid = ctx.snapshot();
      const BeamWeights bw = beam_weights_vec(ctx, h);
      const CycleLedger end = ctx.snapshot();
      beam_build += mid.total_cycles;
      beam_weight += end.total_cycles - mid.total_cycles;
      checksum = format_sig6(frobenius_norm(beam_matrix(bw)));
    }
  } catch (const singular_matrix_error&) {
    failures += 1;
    checksum = "failed";
  }

  const CycleLedger led = ctx.snapshot();
  return BenchRecord{t.kernel,           t.size,
                     t.vlen,             t.lanes,
                     led.total_cycles,   led.vector_instructions,
                     led.scalar_instructions, led.vector_element_ops,
                     checksum};
}

}  // namespace detail

/// One record per valid (kernel, size, vlen, lanes) combination, sorted by
/// that tuple. Inputs are regenerated deterministically per (kernel, size),
/// so every machine config of a kernel/size sees identical inputs. Sweep
/// points run in parallel on independent contexts; sorting makes the output
/// order independent of scheduling.
inline SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;

  std::vector<std::string> kernels;
  for (const std::string& k : spec.kernels)
    if (std::find(kernels.begin(), kernels.end(), k) == kernels.end())
      kernels.push_back(k);

  std::set<std::pair<std::uint64_t, std::uint64_t>> skipped;
  std::vector<detail::SweepTask> tasks;
  std::map<std::pair<std::string, std::size_t>, detail::KernelInputs> inputs;

  for (const std::string& k : kernels) {
    const std::vector<std::size_t>& sizes = (k == "fft") ? spec.fft_sizes : spec.sizes;
    for (const std::size_t size : sizes) {
      detail::KernelInputs& in = inputs[{k, size}];
      if (k == "lse") in.lse = make_lse_inputs(spec.seed, size);
      else if (k == "mmse") in.mmse = make_mmse_inputs(spec.seed, size);
      else if (k == "zf") in.zf_h = make_zf_channel(spec.seed, size);
      else if (k == "fft") in.fft_x = make_fft_input(spec.seed, size);
      else in.beam_cfg = make_beam_config(spec.seed, size);

      for (const std::uint64_t vlen : spec.vlens)
        for (const std::uint64_t lane : spec.lanes) {
          if (lane > vlen / VectorConfig::sew_bits) {
            skipped.insert({vlen, lane});
            continue;
          }
          tasks.push_back(detail::SweepTask{k, size, vlen, lane});
        }
    }
  }
  result.skipped_pairs.assign(skipped.begin(), skipped.end());

  result.records.resize(tasks.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<std::size_t> failures{0};
  std::atomic<std::uint64_t> beam_build{0}, beam_weight{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const detail::SweepTask& t = tasks[i];
      const detail::KernelInputs& in = inputs.at({t.kernel, t.size});
      result.records[i] =
          detail::run_sweep_point(t, spec, in, beam_build, beam_weight, failures);
    }
  };

  const std::size_t hw = std::thread::hardware_concurrency();
  const std::size_t nthreads = std::min<std::size_t>(std::max<std::size_t>(hw, 1),
                                                     std::max<std::size_t>(tasks.size(), 1));
  if (nthreads <= 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  result.failed_points = failures;
  result.beam_build_cycles = beam_build;
  result.beam_weight_cycles = beam_weight;

  std::sort(result.records.begin(), result.records.end(),
            [](const BenchRecord& a, const BenchRecord& b) {
              return std::tie(a.kernel, a.size, a.vlen_bits, a.lanes) <
                     std::tie(b.kernel, b.size, b.vlen_bits, b.lanes);
            });
  return result;
}

inline constexpr std::string_view csv_header =
    "kernel,size,vlen_bits,lanes,cycles,vector_instructions,scalar_instructions,"
    "vector_element_ops,checksum";

inline std::string emit_csv(const std::vector<BenchRecord>& records) {
  std::string out{csv_header};
  out += '\n';
  for (const BenchRecord& r : records) {
    out += r.kernel;
    out += ',' + std::to_string(r.size);
    out += ',' + std::to_string(r.vlen_bits);
    out += ',' + std::to_string(r.lanes);
    out += ',' + std::to_string(r.cycles);
    out += ',' + std::to_string(r.vector_instructions);
    out += ',' + std::to_string(r.scalar_instructions);
    out += ',' + std::to_string(r.vector_element_ops);
    out += ',' + r.checksum;
    out += '\n';
  }
  return out;
}

struct csv_error : std::runtime_error {
  csv_error(std::size_t line_number, const std::string& what)
      : std::runtime_error("CSV line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  std::size_t line;
};

/// Strict parser for the emit_csv schema. Lines beginning with '#' are
/// comments and are skipped.
inline std::vector<BenchRecord> parse_csv(std::string_view text) {
  std::vector<BenchRecord> records;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::size_t pos = 0;

  auto parse_u64 = [](std::string_view f, std::uint64_t& out) {
    const char* end = f.data() + f.size();
    auto [p, ec] = std::from_chars(f.data(), end, out);
    return ec == std::errc{} && p == end && !f.empty();
  };

  while (pos <= text.size()) {
    if (pos == text.size()) break;
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != csv_header) throw csv_error(lineno, "unexpected header");
      header_seen = true;
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t fpos = 0;
    while (true) {
      const std::size_t comma = line.find(',', fpos);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(fpos));
        break;
      }
      fields.push_back(line.substr(fpos, comma - fpos));
      fpos = comma + 1;
    }
    if (fields.size() != 9) throw csv_error(lineno, "expected 9 fields");

    BenchRecord r;
    r.kernel = std::string(fields[0]);
    std::uint64_t size = 0;
    if (!parse_u64(fields[1], size)) throw csv_error(lineno, "bad size");
    r.size = static_cast<std::size_t>(size);
    if (!parse_u64(fields[2], r.vlen_bits)) throw csv_error(lineno, "bad vlen_bits");
    if (!parse_u64(fields[3], r.lanes)) throw csv_error(lineno, "bad lanes");
    if (!parse_u64(fields[4], r.cycles)) throw csv_error(lineno, "bad cycles");
    if (!parse_u64(fields[5], r.vector_instructions))
      throw csv_error(lineno, "bad vector_instructions");
    if (!parse_u64(fields[6], r.scalar_instructions))
      throw csv_error(lineno, "bad scalar_instructions");
    if (!parse_u64(fields[7], r.vector_element_ops))
      throw csv_error(lineno, "bad vector_element_ops");
    if (fields[8].empty()) throw csv_error(lineno, "empty checksum");
    r.checksum = std::string(fields[8]);
    records.push_back(std::move(r));
  }
  if (!header_seen) throw csv_error(lineno == 0 ? 1 : lineno, "missing header");
  return records;
}

struct SpeedupRow {
  std::string kernel;
  std::size_t size = 0;
  std::uint64_t vlen_bits = 0;
  std::uint64_t lanes = 0;
  double speedup = 0.0;
};

/// speedup = cycles(baseline) / cycles(point); the baseline point maps to 1.0.
inline std::vector<SpeedupRow> speedup_table(const std::vector<BenchRecord>& records,
                                             std::uint64_t baseline_vlen,
                                             std::uint64_t baseline_lanes) {
  std::map<std::pair<std::string, std::size_t>, std::uint64_t> base;
  for (const BenchRecord& r : records)
    if (r.vlen_bits == baseline_vlen && r.lanes == baseline_lanes)
      base[{r.kernel, r.size}] = r.cycles;

  std::vector<SpeedupRow> rows;
  rows.reserve(records.size());
  for (const BenchRecord& r : records) {
    const auto it = base.find({r.kernel, r.size});
    if (it == base.end())
      throw std::runtime_error("missing baseline (" + std::to_string(baseline_vlen) +
                               ", " + std::to_string(baseline_lanes) + ") for kernel " +
                               r.kernel + " size " + std::to_string(r.size));
    const double s =
        r.cycles == 0 ? 0.0
                      : static_cast<double>(it->second) / static_cast<double>(r.cycles);
    rows.push_back(SpeedupRow{r.kernel, r.size, r.vlen_bits, r.lanes, s});
  }
  return rows;
}

struct ChartOptions {
  bool log_scale = false;
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string fmtg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

inline double nice_ceil(double v) {
  if (v <= 0.0) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (const double f : {1.0, 2.0, 5.0, 10.0}) {
    if (v <= f * mag) return f * mag;
  }
  return 10.0 * mag;
}

}  // namespace detail

/// Grouped bar chart, one panel per kernel; within a panel bars are grouped
/// by (size, VLEN) with one series per lane count. Fixed 1200x400-per-panel
/// layout, hand-emitted stand-alone SVG 1.1, byte-stable for fixed records.
inline std::string emit_svg_chart(const std::vector<BenchRecord>& records,
                                  const ChartOptions& opt = {}) {
  if (records.empty()) throw std::invalid_argument("emit_svg_chart: no records");

  std::vector<std::string> kernels;
  std::vector<std::uint64_t> all_lanes;
  for (const BenchRecord& r : records) {
    if (std::find(kernels.begin(), kernels.end(), r.kernel) == kernels.end())
      kernels.push_back(r.kernel);
    if (std::find(all_lanes.begin(), all_lanes.end(), r.lanes) == all_lanes.end())
      all_lanes.push_back(r.lanes);
  }
  std::sort(kernels.begin(), kernels.end());
  std::sort(all_lanes.begin(), all_lanes.end());

  static constexpr const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759",
                                            "#76b7b2", "#59a14f", "#edc948",
                                            "#b07aa1", "#9c755f"};
  const std::size_t npal = sizeof(palette) / sizeof(palette[0]);

  const double width = 1200.0, panel_h = 400.0;
  const double ml = 80.0, mr = 170.0, mt = 44.0, mb = 56.0;
  const double plot_w = width - ml - mr;
  const double plot_h = panel_h - mt - mb;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1200\" height=\"" +
         detail::fmtg(panel_h * static_cast<double>(kernels.size())) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"1200\" height=\"" +
         detail::fmtg(panel_h * static_cast<double>(kernels.size())) +
         "\" fill=\"#ffffff\"/>\n";

  for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
    const std::string& kernel = kernels[ki];
    std::vector<BenchRecord> recs;
    for (const BenchRecord& r : records)
      if (r.kernel == kernel) recs.push_back(r);
    std::sort(recs.begin(), recs.end(), [](const BenchRecord& a, const BenchRecord& b) {
      return std::tie(a.size, a.vlen_bits, a.lanes) <
             std::tie(b.size, b.vlen_bits, b.lanes);
    });

    std::vector<std::pair<std::size_t, std::uint64_t>> groups;
    std::uint64_t max_cycles = 1;
    for (const BenchRecord& r : recs) {
      const std::pair<std::size_t, std::uint64_t> g{r.size, r.vlen_bits};
      if (std::find(groups.begin(), groups.end(), g) == groups.end())
        groups.push_back(g);
      max_cycles = std::max(max_cycles, r.cycles);
    }

    const double top_lin = detail::nice_ceil(static_cast<double>(max_cycles));
    const double top_exp =
        std::max(1.0, std::ceil(std::log10(static_cast<double>(max_cycles))));

    auto bar_height = [&](std::uint64_t cycles) {
      if (opt.log_scale)
        return plot_h * std::log10(std::max<double>(1.0, static_cast<double>(cycles))) /
               top_exp;
      return plot_h * static_cast<double>(cycles) / top_lin;
    };

    const double oy = panel_h * static_cast<double>(ki);
    svg += "<g class=\"panel\" id=\"panel-" + kernel + "\" transform=\"translate(0," +
           detail::fmtg(oy) + ")\">\n";
    svg += "<text class=\"panel-title\" x=\"" + detail::fmtg(ml + plot_w / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\" font-weight=\"bold\">" +
           kernel + "</text>\n";

    // y gridlines and tick labels
    const int nticks = opt.log_scale ? static_cast<int>(top_exp) : 5;
    for (int t = 0; t <= nticks; ++t) {
      double frac, value;
      if (opt.log_scale) {
        frac = static_cast<double>(t) / top_exp;
        value = std::pow(10.0, static_cast<double>(t));
      } else {
        frac = static_cast<double>(t) / 5.0;
        value = top_lin * frac;
      }
      const double y = mt + plot_h - plot_h * frac;
      svg += "<line x1=\"" + detail::fmt2(ml) + "\" y1=\"" + detail::fmt2(y) +
             "\" x2=\"" + detail::fmt2(ml + plot_w) + "\" y2=\"" + detail::fmt2(y) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      svg += "<text x=\"" + detail::fmt2(ml - 6) + "\" y=\"" + detail::fmt2(y + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
             detail::fmtg(value) + "</text>\n";
    }

    // axes
    svg += "<line x1=\"" + detail::fmt2(ml) + "\" y1=\"" + detail::fmt2(mt) +
           "\" x2=\"" + detail::fmt2(ml) + "\" y2=\"" + detail::fmt2(mt + plot_h) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + detail::fmt2(ml) + "\" y1=\"" + detail::fmt2(mt + plot_h) +
           "\" x2=\"" + detail::fmt2(ml + plot_w) + "\" y2=\"" +
           detail::fmt2(mt + plot_h) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"16\" y=\"" + detail::fmt2(mt + plot_h / 2) +
           "\" transform=\"rotate(-90 16 " + detail::fmt2(mt + plot_h / 2) +
           ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           "clock cycles</text>\n";
    svg += "<text x=\"" + detail::fmt2(ml + plot_w / 2) + "\" y=\"" +
           detail::fmt2(panel_h - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
           "size / VLEN (bits)</text>\n";

    const double group_w = plot_w / static_cast<double>(groups.size());
    const double slot_w = group_w * 0.8 / static_cast<double>(all_lanes.size());

    // group labels
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const double cxpos = ml + group_w * (static_cast<double>(g) + 0.5);
      svg += "<text x=\"" + detail::fmt2(cxpos) + "\" y=\"" +
             detail::fmt2(mt + plot_h + 16) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
             std::to_string(groups[g].first) + "/" +
             std::to_string(groups[g].second) + "</text>\n";
    }

    // bars, in record order (size, vlen, lanes ascending)
    for (const BenchRecord& r : recs) {
      const std::pair<std::size_t, std::uint64_t> g{r.size, r.vlen_bits};
      const std::size_t gi = static_cast<std::size_t>(
          std::find(groups.begin(), groups.end(), g) - groups.begin());
      const std::size_t si = static_cast<std::size_t>(
          std::find(all_lanes.begin(), all_lanes.end(), r.lanes) - all_lanes.begin());
      const double h = bar_height(r.cycles);
      const double x = ml + group_w * static_cast<double>(gi) + group_w * 0.1 +
                       slot_w * static_cast<double>(si);
      const double y = mt + plot_h - h;
      svg += "<rect class=\"bar\" x=\"" + detail::fmt2(x) + "\" y=\"" +
             detail::fmt2(y) + "\" width=\"" + detail::fmt2(slot_w * 0.9) +
             "\" height=\"" + detail::fmt2(h) + "\" fill=\"" +
             palette[si % npal] + "\"><title>" + r.kernel + " size " +
             std::to_string(r.size) + " vlen " + std::to_string(r.vlen_bits) +
             " lanes " + std::to_string(r.lanes) + ": " + std::to_string(r.cycles) +
             " cycles</title></rect>\n";
    }

    // legend: lane series
    for (std::size_t si = 0; si < all_lanes.size(); ++si) {
      const double ly = mt + 10 + 20.0 * static_cast<double>(si);
      svg += "<g class=\"legend-entry\"><rect x=\"" + detail::fmt2(width - mr + 16) +
             "\" y=\"" + detail::fmt2(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
             palette[si % npal] + "\"/><text x=\"" + detail::fmt2(width - mr + 34) +
             "\" y=\"" + detail::fmt2(ly + 10) +
             "\" font-family=\"sans-serif\" font-size=\"11\">lanes=" +
             std::to_string(all_lanes[si]) + "</text></g>\n";
    }

    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

struct spec_parse_error : std::runtime_error {
  spec_parse_error(std::size_t line_number, const std::string& what)
      : std::runtime_error("sweep spec line " + std::to_string(line_number) + ": " +
                           what),
        line(line_number) {}
  std::size_t line;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Flat key-value sweep spec: `key = v1,v2,...` per line, '#' comments.
/// Keys: kernels, sizes, fft_sizes, vlens, lanes, seed, issue_overhead,
/// strided_factor. Unset keys keep their defaults.
inline SweepSpec parse_sweep_spec(std::string_view text) {
  SweepSpec spec;
  std::size_t lineno = 0;
  std::size_t pos = 0;

  auto split_values = [](std::string_view v) {
    std::vector<std::string_view> out;
    std::size_t p = 0;
    while (true) {
      const std::size_t comma = v.find(',', p);
      if (comma == std::string_view::npos) {
        out.push_back(detail::trim(v.substr(p)));
        break;
      }
      out.push_back(detail::trim(v.substr(p, comma - p)));
      p = comma + 1;
    }
    return out;
  };

  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw spec_parse_error(lineno, "expected key = value");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (value.empty()) throw spec_parse_error(lineno, "empty value");

    auto parse_u64_list = [&](std::string_view v) {
      std::vector<std::uint64_t> out;
      for (const std::string_view f : split_values(v)) {
        std::uint64_t x = 0;
        const char* end = f.data() + f.size();
        auto [p, ec] = std::from_chars(f.data(), end, x);
        if (ec != std::errc{} || p != end || f.empty())
          throw spec_parse_error(lineno, "bad number '" + std::string(f) + "'");
        out.push_back(x);
      }
      return out;
    };
    auto parse_single_u64 = [&](std::string_view v) {
      const std::vector<std::uint64_t> list = parse_u64_list(v);
      if (list.size() != 1) throw spec_parse_error(lineno, "expected a single value");
      return list.front();
    };

    if (key == "kernels") {
      spec.kernels.clear();
      for (const std::string_view f : split_values(value))
        spec.kernels.emplace_back(f);
    } else if (key == "sizes") {
      spec.sizes.clear();
      for (const std::uint64_t v : parse_u64_list(value))
        spec.sizes.push_back(static_cast<std::size_t>(v));
    } else if (key == "fft_sizes") {
      spec.fft_sizes.clear();
      for (const std::uint64_t v : parse_u64_list(value))
        spec.fft_sizes.push_back(static_cast<std::size_t>(v));
    } else if (key == "vlens") {
      spec.vlens = parse_u64_list(value);
    } else if (key == "lanes") {
      spec.lanes = parse_u64_list(value);
    } else if (key == "seed") {
      spec.seed = parse_single_u64(value);
    } else if (key == "issue_overhead") {
      spec.issue_overhead = parse_single_u64(value);
    } else if (key == "strided_factor") {
      spec.strided_factor = parse_single_u64(value);
    } else {
      throw spec_parse_error(lineno, "unknown key '" + std::string(key) + "'");
    }
  }
  return spec;
}

}  // namespace lowphy
