#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sls/rsw.hpp"
#include "sls/sls.hpp"

namespace sls::bench {

enum class Operation { kEval, kTdEval, kSign, kForge, kVerify };

const char* to_string(Operation op);
Operation parse_operation(std::string_view name);

// One timing row; T = 2^j.
struct BenchRecord {
  Operation operation;
  unsigned lambda;
  unsigned j;
  unsigned trial;
  double wall_time_s;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct CalibrationResult {
  double rate;  // squarings per second
  unsigned lambda;
  uint64_t sample_t;
};

inline constexpr uint64_t kMinCalibrationSquarings = uint64_t{1} << 16;
inline constexpr int kCalibrationTrials = 5;

// Modulus, trapdoor and puzzle input shared by the sweeps at one lambda.
struct Fixture {
  unsigned lambda;
  RsaModulus modulus;
  TrapdoorSecret trapdoor;
  GroupElement x;
};

Fixture make_fixture(unsigned lambda, RandomSource& rng);

// rate = sample_t / median wall time of kCalibrationTrials rsw_eval runs.
CalibrationResult calibrate(const Fixture& fixture, uint64_t sample_t);
CalibrationResult calibrate(unsigned lambda, uint64_t sample_t, RandomSource& rng);

struct SweepOptions {
  std::chrono::duration<double> budget = std::chrono::minutes(10);
};

struct SweepResult {
  std::vector<BenchRecord> records;
  bool truncated = false;
};

// eval for every j in [j_min, j_max], `trials` runs each.
SweepResult bench_eval_sweep(const Fixture& fixture, unsigned j_min, unsigned j_max,
                             unsigned trials, const SweepOptions& options = {});
// td_eval at one j for each fixture (one fixture per lambda).
SweepResult bench_tdeval_sweep(std::span<const Fixture> fixtures, unsigned fixed_j,
                               unsigned trials, const SweepOptions& options = {});
SweepResult bench_tdeval_sweep(std::span<const unsigned> lambdas, unsigned fixed_j,
                               unsigned trials, RandomSource& rng,
                               const SweepOptions& options = {});
// td_eval across several j at one lambda.
SweepResult bench_tdeval_j_sweep(const Fixture& fixture, std::span<const unsigned> js,
                                 unsigned trials, const SweepOptions& options = {});
// eval baseline, sign, forge and verify at each j, with one keypair reused across j.
// sign and verify rows are per-call averages over a batch of at least 2 ms.
SweepResult bench_sls_sweep(const Fixture& fixture, std::span<const unsigned> js,
                            unsigned trials, RandomSource& rng,
                            const SweepOptions& options = {});

double median(std::vector<double> values);

struct SeriesPoint {
  Operation operation;
  unsigned lambda;
  unsigned j;
  double median_s;
};
// Median wall time per (operation, lambda, j), ordered by those keys.
std::vector<SeriesPoint> medians(std::span<const BenchRecord> records);

inline constexpr std::string_view kCsvHeader = "operation,lambda,j,trial,wall_time_s";

std::string to_csv(std::span<const BenchRecord> records);
std::vector<BenchRecord> parse_csv(std::string_view text);
std::string to_svg(std::span<const BenchRecord> records);

enum class ReportFormat { kCsv, kSvg };
void emit_report(std::span<const BenchRecord> records, ReportFormat format,
                 const std::filesystem::path& path);

}  // namespace sls::bench
