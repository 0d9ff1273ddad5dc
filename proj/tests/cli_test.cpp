#include "cli_support.hpp"
#include "doctest.h"
#include "sls/bench.hpp"
#include "sls/formats.hpp"

using cli::run;
using cli::slurp;

namespace {

const std::string kSeed = "00112233445566778899aabbccddeeff";
const std::string kBeaconSeed(64, '7');

struct Workspace {
  std::filesystem::path dir = cli::scratch_dir("sls_cli_test");
  std::string path(const std::string& name) const { return (dir / name).string(); }

  void setup_toy() {
    REQUIRE(run("setup --lambda 32 --t 1024 --seed " + kSeed + " --out " + path("pp.txt"))
                .exit_code == 0);
    REQUIRE(run("beacon init --seed " + kBeaconSeed + " --period 1 --genesis 1000000 --out " +
                path("beacon.txt"))
                .exit_code == 0);
    cli::spit(dir / "msg.txt", "pay bob 5 coins");
  }
};

}  // namespace

TEST_CASE("setup is deterministic under --seed and writes parseable files") {
  Workspace w;
  const std::string args = "setup --lambda 32 --t 1024 --seed " + kSeed + " --out ";
  REQUIRE(run(args + w.path("a.txt")).exit_code == 0);
  REQUIRE(run(args + w.path("b.txt")).exit_code == 0);
  CHECK(slurp(w.dir / "a.txt") == slurp(w.dir / "b.txt"));
  CHECK(slurp(w.dir / "a.txt.sk") == slurp(w.dir / "b.txt.sk"));
  CHECK_FALSE(std::filesystem::exists(w.dir / "a.txt.trapdoor"));

  const auto pp = sls::formats::parse_params(slurp(w.dir / "a.txt"));
  CHECK(pp.time_bound() == 1024);
  CHECK(pp.tlpke.modulus.bit_length() == 64);
  CHECK(sls::formats::serialize_params(pp) == slurp(w.dir / "a.txt"));
  const auto perms = std::filesystem::status(w.dir / "a.txt.sk").permissions();
  CHECK((perms & std::filesystem::perms::others_read) == std::filesystem::perms::none);
}

TEST_CASE("SLS_SEED stands in for --seed") {
  Workspace w;
  REQUIRE(run("setup --lambda 24 --t 10 --seed " + kSeed + " --out " + w.path("a.txt"))
              .exit_code == 0);
  REQUIRE(run("setup --lambda 24 --t 10 --out " + w.path("b.txt"), "SLS_SEED=" + kSeed)
              .exit_code == 0);
  CHECK(slurp(w.dir / "a.txt") == slurp(w.dir / "b.txt"));
}

TEST_CASE("test mode writes a consistent trapdoor file") {
  Workspace w;
  REQUIRE(run("setup --lambda 24 --t 100 --test-mode --seed " + kSeed + " --out " +
              w.path("pp.txt"))
              .exit_code == 0);
  const auto td = sls::formats::parse_trapdoor(slurp(w.dir / "pp.txt.trapdoor"));
  const auto pp = sls::formats::parse_params(slurp(w.dir / "pp.txt"));
  CHECK(td.p * td.q == pp.tlpke.modulus.n());
}

TEST_CASE("usage errors exit 2") {
  Workspace w;
  const auto missing_t = run("setup --lambda 32 --out " + w.path("x.txt"));
  CHECK(missing_t.exit_code == 2);
  CHECK(missing_t.output.find("--t") != std::string::npos);
  CHECK(missing_t.output.find("Usage") != std::string::npos);
  CHECK(run("").exit_code == 2);
  CHECK(run("setup --lambda 8 --t 1 --out " + w.path("x.txt")).exit_code == 2);
  CHECK(run("verify --params " + w.path("nope") + " --message " + w.path("nope") +
            " --sig " + w.path("nope"))
            .exit_code == 2);
  CHECK(run("bench --sweep bogus").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("sign -> verify, forge -> verify, forge output equals sign output") {
  Workspace w;
  w.setup_toy();
  const std::string common = "--params " + w.path("pp.txt") + " --message " +
                             w.path("msg.txt") + " --beacon " + w.path("beacon.txt") +
                             " --round 42";
  REQUIRE(run("sign " + common + " --sk " + w.path("pp.txt.sk") + " --out " +
              w.path("signed.txt"))
              .exit_code == 0);
  REQUIRE(run("forge " + common + " --out " + w.path("forged.txt")).exit_code == 0);
  CHECK(slurp(w.dir / "signed.txt") == slurp(w.dir / "forged.txt"));

  const std::string verify_base =
      "verify --params " + w.path("pp.txt") + " --message " + w.path("msg.txt");
  auto ok = run(verify_base + " --sig " + w.path("signed.txt"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.output == "accept\n");
  CHECK(run(verify_base + " --sig " + w.path("forged.txt") + " --beacon " +
            w.path("beacon.txt"))
            .exit_code == 0);

  cli::spit(w.dir / "tampered.txt", "pay bob 6 coins");
  auto bad = run("verify --params " + w.path("pp.txt") + " --message " +
                 w.path("tampered.txt") + " --sig " + w.path("signed.txt"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.output == "reject\n");
}

TEST_CASE("verify rejects a signature whose beacon round is not on the chain") {
  Workspace w;
  w.setup_toy();
  REQUIRE(run("sign --params " + w.path("pp.txt") + " --message " + w.path("msg.txt") +
              " --beacon " + w.path("beacon.txt") + " --round 3 --sk " +
              w.path("pp.txt.sk") + " --out " + w.path("sig.txt"))
              .exit_code == 0);
  std::string sig = slurp(w.dir / "sig.txt");
  sig.replace(sig.find("beacon_round: 3"), 15, "beacon_round: 4");
  cli::spit(w.dir / "sig4.txt", sig);
  const std::string verify = "verify --params " + w.path("pp.txt") + " --message " +
                             w.path("msg.txt") + " --sig " + w.path("sig4.txt");
  CHECK(run(verify).exit_code == 0);  // signature itself binds only r
  CHECK(run(verify + " --beacon " + w.path("beacon.txt")).exit_code == 1);
}

TEST_CASE("verify prints the freshness verdict with a calibration file") {
  Workspace w;
  w.setup_toy();
  REQUIRE(run("sign --params " + w.path("pp.txt") + " --message " + w.path("msg.txt") +
              " --beacon " + w.path("beacon.txt") + " --round 10 --sk " +
              w.path("pp.txt.sk") + " --out " + w.path("sig.txt"))
              .exit_code == 0);
  // Round 10 is at t = 1000010; T = 1024 at 100 squarings/s lasts 10.24 s.
  cli::spit(w.dir / "cal.txt", "slscal-v1\nlambda: 32\nsample_t: 65536\nrate: 100\n");
  const std::string base = "verify --params " + w.path("pp.txt") + " --message " +
                           w.path("msg.txt") + " --sig " + w.path("sig.txt") +
                           " --calibration " + w.path("cal.txt") + " --observed-time ";
  const auto fresh = run(base + "1000020");
  CHECK(fresh.exit_code == 0);
  CHECK(fresh.output == "accept\nfreshness: convincing\n");
  CHECK(run(base + "1000020.24").output == "accept\nfreshness: expired\n");
}

TEST_CASE("sign refuses a beacon round from the future") {
  Workspace w;
  REQUIRE(run("setup --lambda 24 --t 10 --seed " + kSeed + " --out " + w.path("pp.txt"))
              .exit_code == 0);
  REQUIRE(run("beacon init --seed " + kBeaconSeed + " --period 3600 --out " +
              w.path("b.txt"))
              .exit_code == 0);
  cli::spit(w.dir / "m.txt", "m");
  const auto r = run("sign --params " + w.path("pp.txt") + " --message " + w.path("m.txt") +
                     " --beacon " + w.path("b.txt") + " --round 5 --sk " +
                     w.path("pp.txt.sk") + " --out " + w.path("s.txt"));
  CHECK(r.exit_code == 3);
  const auto now = run("beacon get --beacon " + w.path("b.txt"));
  CHECK(now.exit_code == 0);
  CHECK(now.output.rfind("round: 0\n", 0) == 0);
}

TEST_CASE("bench and calibrate produce the documented outputs") {
  Workspace w;
  const auto b = run("bench --sweep eval --lambda 32 --j 10..14 --trials 3 --seed " + kSeed +
                     " --csv " + w.path("eval.csv") + " --svg " + w.path("eval.svg"));
  REQUIRE(b.exit_code == 0);
  const std::string csv = slurp(w.dir / "eval.csv");
  CHECK(csv.rfind("operation,lambda,j,trial,wall_time_s\n", 0) == 0);
  CHECK(sls::bench::parse_csv(csv).size() == 15);
  CHECK(slurp(w.dir / "eval.svg").find("<polyline") != std::string::npos);

  const auto td = run("bench --sweep tdeval --lambdas 16,24 --j 20 --trials 2");
  REQUIRE(td.exit_code == 0);
  CHECK(sls::bench::parse_csv(td.output.substr(0, td.output.find("td_eval lambda="))).size() ==
        4);

  const auto cal = run("calibrate --lambda 32 --out " + w.path("cal.txt"));
  REQUIRE(cal.exit_code == 0);
  const auto parsed = sls::formats::parse_calibration(slurp(w.dir / "cal.txt"));
  CHECK(parsed.rate > 0);
  CHECK(cal.output.find("rate: ") != std::string::npos);
  CHECK(run("calibrate --lambda 32 --sample-t 100").exit_code == 2);
}
