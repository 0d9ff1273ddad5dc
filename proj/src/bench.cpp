#include "sls/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sls/error.hpp"

namespace sls::bench {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_once(F&& fn) {
  const auto start = Clock::now();
  fn();
  const std::chrono::duration<double> elapsed = Clock::now() - start;
  return std::max(elapsed.count(), 1e-9);
}

// Per-call time of a fast operation, repeated until the batch spans at least
// kMinBatch so one sample is not dominated by timer and cache noise.
constexpr std::chrono::duration<double> kMinBatch = std::chrono::milliseconds(2);

template <typename F>
double time_batched(F&& fn) {
  const auto start = Clock::now();
  unsigned calls = 0;
  std::chrono::duration<double> elapsed{};
  do {
    fn();
    ++calls;
    elapsed = Clock::now() - start;
  } while (elapsed < kMinBatch);
  return std::max(elapsed.count() / calls, 1e-9);
}

TimeBound time_bound_for(unsigned j) {
  if (j > 62) {
    throw Error(ErrorCode::kInvalidArgument, "j must be at most 62");
  }
  return TimeBound{1} << j;
}

class Budget {
 public:
  explicit Budget(const SweepOptions& options)
      : deadline_(Clock::now() +
                  std::chrono::duration_cast<Clock::duration>(options.budget)) {}
  bool exhausted() const { return Clock::now() >= deadline_; }

 private:
  Clock::time_point deadline_;
};

// Keeps the optimiser from dropping a timed computation.
volatile unsigned long g_sink = 0;

void consume(const mpz_class& v) { g_sink = g_sink + mpz_get_ui(v.get_mpz_t()); }

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

template <typename T>
T parse_number(std::string_view field) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kParse, "bad numeric CSV field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

const char* to_string(Operation op) {
  switch (op) {
    case Operation::kEval: return "eval";
    case Operation::kTdEval: return "td_eval";
    case Operation::kSign: return "sign";
    case Operation::kForge: return "forge";
    case Operation::kVerify: return "verify";
  }
  return "unknown";
}

Operation parse_operation(std::string_view name) {
  for (Operation op : {Operation::kEval, Operation::kTdEval, Operation::kSign,
                       Operation::kForge, Operation::kVerify}) {
    if (name == to_string(op)) return op;
  }
  throw Error(ErrorCode::kParse, "unknown operation '" + std::string(name) + "'");
}

Fixture make_fixture(unsigned lambda, RandomSource& rng) {
  auto [modulus, trapdoor] = setup_modulus(SecurityConfig(lambda), rng);
  GroupElement x = sample_element(modulus, rng);
  return Fixture{lambda, std::move(modulus), std::move(trapdoor), std::move(x)};
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "median of an empty sample");
  }
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(),
                                         values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2;
}

CalibrationResult calibrate(const Fixture& fixture, uint64_t sample_t) {
  if (sample_t < kMinCalibrationSquarings) {
    throw Error(ErrorCode::kInvalidArgument, "calibration needs at least 2^16 squarings");
  }
  const RswPublicParams pp(fixture.modulus, sample_t);
  consume(rsw_eval(pp, fixture.x).y.value());  // warm-up
  std::vector<double> times;
  for (int trial = 0; trial < kCalibrationTrials; ++trial) {
    times.push_back(time_once([&] { consume(rsw_eval(pp, fixture.x).y.value()); }));
  }
  const double mid = median(times);
  if (mid < 1e-3) {
    throw Error(ErrorCode::kTimerResolution,
                "calibration run under 1 ms; increase sample_t");
  }
  return CalibrationResult{static_cast<double>(sample_t) / mid, fixture.lambda, sample_t};
}

CalibrationResult calibrate(unsigned lambda, uint64_t sample_t, RandomSource& rng) {
  if (sample_t < kMinCalibrationSquarings) {
    throw Error(ErrorCode::kInvalidArgument, "calibration needs at least 2^16 squarings");
  }
  return calibrate(make_fixture(lambda, rng), sample_t);
}

SweepResult bench_eval_sweep(const Fixture& fixture, unsigned j_min, unsigned j_max,
                             unsigned trials, const SweepOptions& options) {
  SweepResult out;
  if (trials == 0 || j_max < j_min) return out;
  const Budget budget(options);
  consume(rsw_eval(RswPublicParams(fixture.modulus, time_bound_for(j_min)), fixture.x)
              .y.value());
  // Trials round-robin over j so slow drift (thermal, frequency) spreads evenly.
  for (unsigned trial = 0; trial < trials && !out.truncated; ++trial) {
    for (unsigned j = j_min; j <= j_max; ++j) {
      if (budget.exhausted()) {
        out.truncated = true;
        break;
      }
      const RswPublicParams pp(fixture.modulus, time_bound_for(j));
      const double t = time_once([&] { consume(rsw_eval(pp, fixture.x).y.value()); });
      out.records.push_back({Operation::kEval, fixture.lambda, j, trial, t});
    }
  }
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const BenchRecord& a, const BenchRecord& b) { return a.j < b.j; });
  return out;
}

namespace {

struct TdEvalPoint {
  const Fixture* fixture;
  unsigned j;
};

// td_eval over every point, trials round-robin across points; rows are
// returned grouped by point in input order.
SweepResult tdeval_round_robin(std::span<const TdEvalPoint> points, unsigned trials,
                               const SweepOptions& options) {
  SweepResult out;
  if (trials == 0 || points.empty()) return out;
  const Budget budget(options);
  std::vector<RswPublicParams> params;
  for (const TdEvalPoint& p : points) {
    params.emplace_back(p.fixture->modulus, time_bound_for(p.j));
    consume(rsw_td_eval(params.back(), p.fixture->trapdoor, p.fixture->x).y.value());
  }
  std::vector<std::vector<BenchRecord>> rows(points.size());
  for (unsigned trial = 0; trial < trials && !out.truncated; ++trial) {
    for (size_t k = 0; k < points.size(); ++k) {
      if (budget.exhausted()) {
        out.truncated = true;
        break;
      }
      const Fixture& f = *points[k].fixture;
      const double t =
          time_once([&] { consume(rsw_td_eval(params[k], f.trapdoor, f.x).y.value()); });
      rows[k].push_back({Operation::kTdEval, f.lambda, points[k].j, trial, t});
    }
  }
  for (auto& r : rows) out.records.insert(out.records.end(), r.begin(), r.end());
  return out;
}

}  // namespace

SweepResult bench_tdeval_sweep(std::span<const Fixture> fixtures, unsigned fixed_j,
                               unsigned trials, const SweepOptions& options) {
  std::vector<TdEvalPoint> points;
  for (const Fixture& f : fixtures) points.push_back({&f, fixed_j});
  return tdeval_round_robin(points, trials, options);
}

SweepResult bench_tdeval_sweep(std::span<const unsigned> lambdas, unsigned fixed_j,
                               unsigned trials, RandomSource& rng,
                               const SweepOptions& options) {
  std::vector<Fixture> fixtures;
  for (unsigned lambda : lambdas) fixtures.push_back(make_fixture(lambda, rng));
  return bench_tdeval_sweep(fixtures, fixed_j, trials, options);
}

SweepResult bench_tdeval_j_sweep(const Fixture& fixture, std::span<const unsigned> js,
                                 unsigned trials, const SweepOptions& options) {
  std::vector<TdEvalPoint> points;
  for (unsigned j : js) points.push_back({&fixture, j});
  return tdeval_round_robin(points, trials, options);
}

SweepResult bench_sls_sweep(const Fixture& fixture, std::span<const unsigned> js,
                            unsigned trials, RandomSource& rng,
                            const SweepOptions& options) {
  SweepResult out;
  if (trials == 0 || js.empty()) return out;
  const Budget budget(options);
  const schnorr::Group group =
      schnorr::generate_group(schnorr::sizes_for_lambda(fixture.lambda), rng);
  const schnorr::Keypair keypair = schnorr::generate_keypair(group, rng);
  const Bytes message(64, 0x5a);
  BeaconSeed seed{};
  rng.fill(seed);
  const BeaconValue beacon{0, beacon_chain_value(seed, 0), 0};

  std::vector<SlsSetup> setups;
  for (unsigned j : js) {
    setups.push_back(sls_setup_from(tlpke_assemble(fixture.modulus, fixture.trapdoor,
                                                   time_bound_for(j), fixture.x, keypair),
                                    SetupMode::kProduction));
  }
  ShortLivedSignature sig = sls_sign(setups.front().pp, message, beacon, setups.front().key);
  sls_verify(setups.front().pp, message, beacon, sig);

  // Trials round-robin over j, as in the eval sweep.
  for (unsigned trial = 0; trial < trials && !out.truncated; ++trial) {
    for (size_t k = 0; k < js.size(); ++k) {
      const unsigned j = js[k];
      const SlsSetup& setup = setups[k];
      if (budget.exhausted()) {
        out.truncated = true;
        break;
      }
      // Bare eval baseline next to forge; the order alternates per trial so
      // neither side always runs second.
      const RswPublicParams rsw_pp = setup.pp.tlpke.rsw();
      auto run_eval = [&] {
        return time_once([&] { consume(rsw_eval(rsw_pp, fixture.x).y.value()); });
      };
      auto run_forge = [&] {
        return time_once([&] { sig = sls_forge_sign(setup.pp, message, beacon); });
      };
      double t_eval = 0;
      double t_forge = 0;
      if (trial % 2 == 0) {
        t_eval = run_eval();
        t_forge = run_forge();
      } else {
        t_forge = run_forge();
        t_eval = run_eval();
      }
      const double t_sign =
          time_batched([&] { sig = sls_sign(setup.pp, message, beacon, setup.key); });
      Verdict v = Verdict::kReject;
      const double t_verify =
          time_batched([&] { v = sls_verify(setup.pp, message, beacon, sig); });
      if (v != Verdict::kAccept) {
        throw Error(ErrorCode::kMalformedParams, "benchmark signature failed to verify");
      }
      out.records.push_back({Operation::kEval, fixture.lambda, j, trial, t_eval});
      out.records.push_back({Operation::kSign, fixture.lambda, j, trial, t_sign});
      out.records.push_back({Operation::kForge, fixture.lambda, j, trial, t_forge});
      out.records.push_back({Operation::kVerify, fixture.lambda, j, trial, t_verify});
    }
  }
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const BenchRecord& a, const BenchRecord& b) { return a.j < b.j; });
  return out;
}

std::vector<SeriesPoint> medians(std::span<const BenchRecord> records) {
  std::map<std::tuple<Operation, unsigned, unsigned>, std::vector<double>> groups;
  for (const BenchRecord& r : records) {
    groups[{r.operation, r.lambda, r.j}].push_back(r.wall_time_s);
  }
  std::vector<SeriesPoint> out;
  for (auto& [key, times] : groups) {
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                   median(std::move(times))});
  }
  return out;
}

std::string to_csv(std::span<const BenchRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const BenchRecord& r : records) {
    out += to_string(r.operation);
    out += ',' + std::to_string(r.lambda) + ',' + std::to_string(r.j) + ',' +
           std::to_string(r.trial) + ',' + format_double(r.wall_time_s) + '\n';
  }
  return out;
}

std::vector<BenchRecord> parse_csv(std::string_view text) {
  std::vector<BenchRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::kParse, "missing or wrong CSV header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 5) {
      throw Error(ErrorCode::kParse, "CSV row must have 5 fields");
    }
    out.push_back({parse_operation(fields[0]), parse_number<unsigned>(fields[1]),
                   parse_number<unsigned>(fields[2]), parse_number<unsigned>(fields[3]),
                   parse_number<double>(fields[4])});
  }
  return out;
}

std::string to_svg(std::span<const BenchRecord> records) {
  if (records.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no records to chart");
  }
  const std::vector<SeriesPoint> points = medians(records);

  // Trapdoor-vs-lambda chart when every point shares one j; otherwise time vs j.
  const bool by_lambda =
      std::all_of(points.begin(), points.end(),
                  [&](const SeriesPoint& p) { return p.j == points.front().j; }) &&
      std::any_of(points.begin(), points.end(),
                  [&](const SeriesPoint& p) { return p.lambda != points.front().lambda; });

  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const SeriesPoint& p : points) {
    std::string name = to_string(p.operation);
    if (!by_lambda) name += " (lambda=" + std::to_string(p.lambda) + ")";
    const double x = by_lambda ? p.lambda : p.j;
    series[name].emplace_back(x, p.median_s);
  }

  double x_min = 1e300, x_max = -1e300, y_max = 0;
  for (const auto& [name, pts] : series) {
    for (auto [x, y] : pts) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max <= 0) y_max = 1;

  constexpr double kWidth = 640, kHeight = 420, kLeft = 80, kRight = 20, kTop = 30,
                   kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

  static constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">"
      << (by_lambda ? "Security Parameter (bits per prime)" : "Number of Exponentiations")
      << "</text>\n";
  svg << "<text x=\"20\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << kTop + plot_h / 2
      << ")\">" << (by_lambda ? "Trapdoor Evaluation Time (s)" : "Evaluation Time (s)")
      << "</text>\n";
  svg << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + 4
      << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(y_max)
      << "</text>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"" << kTop + plot_h + 15
      << "\" text-anchor=\"middle\" font-size=\"10\">" << x_min << "</text>\n";
  svg << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kTop + plot_h + 15
      << "\" text-anchor=\"middle\" font-size=\"10\">" << x_max << "</text>\n";

  size_t colour = 0;
  for (const auto& [name, pts] : series) {
    const char* stroke = kColours[colour % std::size(kColours)];
    svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" data-series=\"" << name
        << "\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      svg << (i ? " " : "") << sx(pts[i].first) << ',' << sy(pts[i].second);
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 14 * (colour + 1)
        << "\" fill=\"" << stroke << "\" font-size=\"11\">" << name << "</text>\n";
    ++colour;
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_report(std::span<const BenchRecord> records, ReportFormat format,
                 const std::filesystem::path& path) {
  const std::string body = format == ReportFormat::kCsv ? to_csv(records) : to_svg(records);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  }
  out << body;
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIo, "failed writing " + path.string());
  }
}

}  // namespace sls::bench
