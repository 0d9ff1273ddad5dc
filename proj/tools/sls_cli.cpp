// sls: command-line front end for time-lock parameter generation, short-lived
// signing, forging, verification, the mock beacon and timing benchmarks.
//
// Exit codes: 0 success/accept, 1 reject, 2 usage or parse error, 3 internal.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sls/bench.hpp"
#include "sls/error.hpp"
#include "sls/formats.hpp"
#include "sls/sls.hpp"

namespace {

using namespace sls;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::unique_ptr<RandomSource> make_rng(const std::string& seed_hex) {
  if (seed_hex.empty()) return std::make_unique<SystemRandom>();
  return std::make_unique<SeededRandom>(from_hex(seed_hex));
}

// Input files that are missing count as usage errors.
std::string read_input(const std::string& path) {
  try {
    return formats::read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::vector<unsigned> parse_j_list(const std::string& text) {
  std::vector<unsigned> out;
  const size_t dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
      const unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
      if (hi < lo) throw Error(ErrorCode::kInvalidArgument, "empty j range " + text);
      for (unsigned j = lo; j <= hi; ++j) out.push_back(j);
    } else {
      size_t start = 0;
      while (start <= text.size()) {
        const size_t comma = text.find(',', start);
        out.push_back(static_cast<unsigned>(std::stoul(text.substr(start, comma - start))));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidArgument, "bad j list '" + text + "'");
  }
  for (unsigned j : out) {
    if (j > 62) throw Error(ErrorCode::kInvalidArgument, "j must be at most 62");
  }
  return out;
}

struct SetupArgs {
  unsigned lambda = 0;
  uint64_t t = 0;
  std::string out;
  bool test_mode = false;
  std::string seed;
};

int run_setup(const SetupArgs& a) {
  auto rng = make_rng(a.seed);
  const SecurityConfig cfg(a.lambda);
  SlsSetup setup = sls_setup(cfg, a.t, *rng,
                             a.test_mode ? SetupMode::kTest : SetupMode::kProduction);
  formats::write_file(a.out, formats::serialize_params(setup.pp));
  formats::write_file(a.out + ".sk", formats::serialize_secret_key(setup.key), true);
  if (setup.trapdoor) {
    formats::write_file(a.out + ".trapdoor", formats::serialize_trapdoor(*setup.trapdoor),
                        true);
  }
  std::cout << "params: " << a.out << "\nsecret key: " << a.out << ".sk\n";
  if (setup.trapdoor) std::cout << "trapdoor: " << a.out << ".trapdoor\n";
  return kExitOk;
}

struct SignArgs {
  std::string params;
  std::string sk;
  std::string message;
  std::string beacon;
  std::optional<uint64_t> round;
  std::string out;
};

BeaconValue fetch_beacon(const std::string& path, const std::optional<uint64_t>& round) {
  const Beacon beacon = formats::parse_beacon(read_input(path));
  const int64_t now = unix_now();
  return beacon.get(round ? *round : beacon.current_round(now), now);
}

int run_sign(const SignArgs& a, bool forge) {
  const SlsPublicParams pp = formats::parse_params(read_input(a.params));
  const std::string message = read_input(a.message);
  const BeaconValue bv = fetch_beacon(a.beacon, a.round);
  ShortLivedSignature sig;
  if (forge) {
    sig = sls_forge_sign(pp, as_bytes(message), bv);
  } else {
    const SlsSecretKey key = formats::parse_secret_key(read_input(a.sk));
    sig = sls_sign(pp, as_bytes(message), bv, key);
  }
  formats::write_file(a.out, formats::serialize_signature(sig));
  return kExitOk;
}

struct VerifyArgs {
  std::string params;
  std::string message;
  std::string sig;
  std::string beacon;
  std::string calibration;
  std::optional<double> observed_time;
};

int run_verify(const VerifyArgs& a) {
  const SlsPublicParams pp = formats::parse_params(read_input(a.params));
  const std::string message = read_input(a.message);
  const ShortLivedSignature sig = formats::parse_signature(read_input(a.sig));

  std::optional<Beacon> beacon;
  if (!a.beacon.empty()) beacon = formats::parse_beacon(read_input(a.beacon));

  Verdict verdict = sls_verify(pp, as_bytes(message), sig.beacon, sig);
  if (beacon && !beacon->verify(sig.beacon)) verdict = Verdict::kReject;
  std::cout << to_string(verdict) << "\n";

  if (!a.calibration.empty()) {
    const auto cal = formats::parse_calibration(read_input(a.calibration));
    using namespace std::chrono;
    const int64_t t0 = beacon ? beacon->timestamp(sig.beacon.round) : sig.beacon.timestamp;
    const TimePoint beacon_time{seconds(t0)};
    const TimePoint observed =
        a.observed_time
            ? TimePoint{duration_cast<nanoseconds>(duration<double>(*a.observed_time))}
            : time_point_cast<nanoseconds>(system_clock::now());
    const Freshness f = sls_check_freshness({beacon_time, observed, cal.rate}, pp);
    std::cout << "freshness: " << to_string(f) << "\n";
  }
  return verdict == Verdict::kAccept ? kExitOk : kExitReject;
}

struct BeaconArgs {
  std::string seed;
  uint64_t period = 30;
  std::optional<int64_t> genesis;
  std::string out;
  std::string file;
  std::optional<uint64_t> round;
};

int run_beacon_init(const BeaconArgs& a) {
  const Bytes seed_bytes = from_hex(a.seed);
  if (seed_bytes.size() != 32) {
    throw Error(ErrorCode::kInvalidArgument, "beacon seed must be 64 hex characters");
  }
  BeaconSeed seed{};
  std::copy(seed_bytes.begin(), seed_bytes.end(), seed.begin());
  const Beacon beacon = a.genesis ? Beacon(seed, a.period, *a.genesis)
                                  : beacon_init(seed, a.period);
  formats::write_file(a.out, formats::serialize_beacon(beacon));
  return kExitOk;
}

int run_beacon_get(const BeaconArgs& a) {
  const BeaconValue bv = fetch_beacon(a.file, a.round);
  std::cout << "round: " << bv.round << "\nvalue: " << to_hex(bv.value)
            << "\ntimestamp: " << bv.timestamp << "\n";
  return kExitOk;
}

struct CalibrateArgs {
  unsigned lambda = 0;
  uint64_t sample_t = uint64_t{1} << 20;
  std::string out;
  std::string seed;
};

int run_calibrate(const CalibrateArgs& a) {
  auto rng = make_rng(a.seed);
  const bench::CalibrationResult cal = bench::calibrate(a.lambda, a.sample_t, *rng);
  std::cout << "lambda: " << cal.lambda << "\nsample_t: " << cal.sample_t
            << "\nrate: " << cal.rate << "\n";
  if (!a.out.empty()) formats::write_file(a.out, formats::serialize_calibration(cal));
  return kExitOk;
}

struct BenchArgs {
  std::string sweep;
  unsigned lambda = 32;
  std::vector<unsigned> lambdas;
  std::string j = "16..24";
  unsigned trials = 5;
  double budget_s = 600;
  std::string csv;
  std::string svg;
  std::string seed;
};

int run_bench(const BenchArgs& a) {
  auto rng = make_rng(a.seed);
  const std::vector<unsigned> js = parse_j_list(a.j);
  bench::SweepOptions options;
  options.budget = std::chrono::duration<double>(a.budget_s);

  bench::SweepResult result;
  if (a.sweep == "eval") {
    const auto fixture = bench::make_fixture(a.lambda, *rng);
    result = bench::bench_eval_sweep(fixture, js.front(), js.back(), a.trials, options);
  } else if (a.sweep == "tdeval") {
    const std::vector<unsigned> lambdas = a.lambdas.empty()
                                              ? std::vector<unsigned>{a.lambda}
                                              : a.lambdas;
    result = bench::bench_tdeval_sweep(lambdas, js.front(), a.trials, *rng, options);
  } else if (a.sweep == "tdeval-j") {
    const auto fixture = bench::make_fixture(a.lambda, *rng);
    result = bench::bench_tdeval_j_sweep(fixture, js, a.trials, options);
  } else {
    const auto fixture = bench::make_fixture(a.lambda, *rng);
    result = bench::bench_sls_sweep(fixture, js, a.trials, *rng, options);
  }

  if (!a.csv.empty()) {
    bench::emit_report(result.records, bench::ReportFormat::kCsv, a.csv);
  } else {
    std::cout << bench::to_csv(result.records);
  }
  if (!a.svg.empty() && !result.records.empty()) {
    bench::emit_report(result.records, bench::ReportFormat::kSvg, a.svg);
  }
  for (const auto& p : bench::medians(result.records)) {
    std::cerr << bench::to_string(p.operation) << " lambda=" << p.lambda << " j=" << p.j
              << " median=" << p.median_s << "s\n";
  }
  if (result.truncated) std::cerr << "warning: time budget exceeded, results truncated\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-lock encryption and short-lived signatures"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  SetupArgs setup;
  auto* setup_cmd = app.add_subcommand("setup", "Generate public params and secret key");
  setup_cmd->add_option("--lambda", setup.lambda, "Bits per RSA prime (>= 16)")->required();
  setup_cmd->add_option("--t", setup.t, "Number of sequential squarings T")->required();
  setup_cmd->add_option("--out", setup.out, "Params file (writes <out>.sk too)")->required();
  setup_cmd->add_flag("--test-mode", setup.test_mode, "Also write <out>.trapdoor");
  setup_cmd->add_option("--seed", setup.seed, "Hex seed for deterministic output")
      ->envname("SLS_SEED");

  SignArgs sign;
  auto* sign_cmd = app.add_subcommand("sign", "Sign with the secret key");
  SignArgs forge;
  auto* forge_cmd = app.add_subcommand("forge", "Forge by T sequential squarings");
  for (auto [cmd, args] : {std::pair{sign_cmd, &sign}, std::pair{forge_cmd, &forge}}) {
    cmd->add_option("--params", args->params, "Params file")->required();
    cmd->add_option("--message", args->message, "Message file")->required();
    cmd->add_option("--beacon", args->beacon, "Beacon file")->required();
    cmd->add_option("--round", args->round, "Beacon round (default: latest)");
    cmd->add_option("--out", args->out, "Signature file to write")->required();
  }
  sign_cmd->add_option("--sk", sign.sk, "Secret key file")->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature");
  verify_cmd->add_option("--params", verify.params, "Params file")->required();
  verify_cmd->add_option("--message", verify.message, "Message file")->required();
  verify_cmd->add_option("--sig", verify.sig, "Signature file")->required();
  verify_cmd->add_option("--beacon", verify.beacon, "Beacon file to check the round against");
  verify_cmd->add_option("--calibration", verify.calibration,
                         "Calibration file; prints the freshness verdict");
  verify_cmd->add_option("--observed-time", verify.observed_time,
                         "Observation time in unix seconds (default: now)");

  BeaconArgs beacon;
  auto* beacon_cmd = app.add_subcommand("beacon", "Mock randomness beacon");
  beacon_cmd->require_subcommand(1);
  auto* beacon_init_cmd = beacon_cmd->add_subcommand("init", "Write a beacon file");
  beacon_init_cmd->add_option("--seed", beacon.seed, "64 hex chars")->required();
  beacon_init_cmd->add_option("--period", beacon.period, "Seconds between rounds")
      ->check(CLI::PositiveNumber);
  beacon_init_cmd->add_option("--genesis", beacon.genesis,
                              "Unix time of round 0 (default: now)");
  beacon_init_cmd->add_option("--out", beacon.out, "Beacon file")->required();
  auto* beacon_get_cmd = beacon_cmd->add_subcommand("get", "Print a beacon round");
  beacon_get_cmd->add_option("--beacon", beacon.file, "Beacon file")->required();
  beacon_get_cmd->add_option("--round", beacon.round, "Round (default: latest)");

  CalibrateArgs calibrate;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Measure squarings per second");
  calibrate_cmd->add_option("--lambda", calibrate.lambda, "Bits per RSA prime")->required();
  calibrate_cmd->add_option("--sample-t", calibrate.sample_t, "Squarings per trial");
  calibrate_cmd->add_option("--out", calibrate.out, "Calibration file to write");
  calibrate_cmd->add_option("--seed", calibrate.seed, "Hex seed")->envname("SLS_SEED");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweeps");
  bench_cmd->add_option("--sweep", bench_args.sweep, "eval | tdeval | tdeval-j | sls")
      ->required()
      ->check(CLI::IsMember({"eval", "tdeval", "tdeval-j", "sls"}));
  bench_cmd->add_option("--lambda", bench_args.lambda, "Bits per RSA prime");
  bench_cmd->add_option("--lambdas", bench_args.lambdas, "List of lambdas for tdeval")
      ->delimiter(',');
  bench_cmd->add_option("--j", bench_args.j, "j range a..b or list a,b,c (T = 2^j)");
  bench_cmd->add_option("--trials", bench_args.trials, "Trials per point");
  bench_cmd->add_option("--budget", bench_args.budget_s, "Time budget in seconds");
  bench_cmd->add_option("--csv", bench_args.csv, "CSV output (default: stdout)");
  bench_cmd->add_option("--svg", bench_args.svg, "SVG chart output");
  bench_cmd->add_option("--seed", bench_args.seed, "Hex seed")->envname("SLS_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*setup_cmd) return run_setup(setup);
    if (*sign_cmd) return run_sign(sign, false);
    if (*forge_cmd) return run_sign(forge, true);
    if (*verify_cmd) return run_verify(verify);
    if (*beacon_init_cmd) return run_beacon_init(beacon);
    if (*beacon_get_cmd) return run_beacon_get(beacon);
    if (*calibrate_cmd) return run_calibrate(calibrate);
    if (*bench_cmd) return run_bench(bench_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage =
        e.code() == ErrorCode::kParse || e.code() == ErrorCode::kInvalidArgument;
    return usage ? kExitUsage : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
