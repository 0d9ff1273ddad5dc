#include "sls/formats.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "sls/error.hpp"

namespace sls::formats {

namespace {

struct Field {
  std::string key;
  std::string value;
};

// Splits "key: value" lines. With a non-empty header the first line must match.
std::vector<Field> read_fields(std::string_view text, std::string_view header) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!header.empty()) {
    if (!std::getline(in, line) || line != header) {
      throw Error(ErrorCode::kParse, "expected header '" + std::string(header) + "'");
    }
  }
  std::vector<Field> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t colon = line.find(": ");
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kParse, "malformed line '" + line + "'");
    }
    out.push_back({line.substr(0, colon), line.substr(colon + 2)});
  }
  return out;
}

class FieldReader {
 public:
  FieldReader(std::string_view text, std::string_view header)
      : fields_(read_fields(text, header)) {}

  const std::string& take(std::string_view key) {
    if (next_ >= fields_.size() || fields_[next_].key != key) {
      throw Error(ErrorCode::kParse, "expected field '" + std::string(key) + "'");
    }
    return fields_[next_++].value;
  }

  bool has(std::string_view key) const {
    return next_ < fields_.size() && fields_[next_].key == key;
  }

  void finish() const {
    if (next_ != fields_.size()) {
      throw Error(ErrorCode::kParse, "unexpected field '" + fields_[next_].key + "'");
    }
  }

 private:
  std::vector<Field> fields_;
  size_t next_ = 0;
};

template <typename T>
T parse_decimal(const std::string& s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "bad decimal '" + s + "'");
  }
  return value;
}

// Canonical hex only: no leading zeros, lowercase.
mpz_class parse_hex_int(const std::string& s) {
  mpz_class v = mpz_from_hex(s);
  if (mpz_to_hex(v) != s) {
    throw Error(ErrorCode::kParse, "non-canonical hex integer '" + s + "'");
  }
  return v;
}

template <size_t N>
std::array<uint8_t, N> parse_fixed_hex(const std::string& s) {
  const Bytes b = from_hex(s);
  if (b.size() != N || to_hex(b) != s) {
    throw Error(ErrorCode::kParse, "expected " + std::to_string(2 * N) + " lowercase hex chars");
  }
  std::array<uint8_t, N> out{};
  std::copy(b.begin(), b.end(), out.begin());
  return out;
}

// Re-throws invariant failures on parsed data as parse errors.
template <typename F>
auto checked(F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, std::string("invalid contents: ") + e.what());
  }
}

}  // namespace

std::string serialize_params(const SlsPublicParams& pp) {
  const TlpkePublicParams& t = pp.tlpke;
  std::string out = "slsparams-v1\n";
  out += "n: " + mpz_to_hex(t.modulus.n()) + "\n";
  out += "t: " + mpz_to_hex(mpz_class(static_cast<unsigned long>(t.time_bound))) + "\n";
  out += "x: " + mpz_to_hex(t.puzzle_input.value()) + "\n";
  out += "sig_pk: " + to_hex(t.enc_pk.encode()) + "\n";
  out += "ek: " + mpz_to_hex(t.masked_sk) + "\n";
  return out;
}

SlsPublicParams parse_params(std::string_view text) {
  FieldReader r(text, "slsparams-v1");
  const mpz_class n = parse_hex_int(r.take("n"));
  const mpz_class t = parse_hex_int(r.take("t"));
  const mpz_class x = parse_hex_int(r.take("x"));
  const Bytes pk = from_hex(r.take("sig_pk"));
  const mpz_class ek = parse_hex_int(r.take("ek"));
  r.finish();
  return checked([&] {
    if (t > mpz_class(static_cast<unsigned long>(kMaxTimeBound))) {
      throw Error(ErrorCode::kParse, "t exceeds 2^63 - 1");
    }
    RsaModulus modulus(n);
    TlpkePublicParams tp{modulus, static_cast<TimeBound>(t.get_ui()),
                         GroupElement(x, modulus), schnorr::PublicKey::decode(pk), ek};
    tp.validate();
    return SlsPublicParams{std::move(tp)};
  });
}

std::string serialize_secret_key(const SlsSecretKey& key) {
  return "slssk-v1\nsk: " + mpz_to_hex(key.sk) + "\n";
}

SlsSecretKey parse_secret_key(std::string_view text) {
  FieldReader r(text, "slssk-v1");
  SlsSecretKey key{parse_hex_int(r.take("sk"))};
  r.finish();
  return key;
}

std::string serialize_trapdoor(const TrapdoorSecret& sp) {
  return "slstrapdoor-v1\np: " + mpz_to_hex(sp.p) + "\nq: " + mpz_to_hex(sp.q) +
         "\nphi: " + mpz_to_hex(sp.phi) + "\n";
}

TrapdoorSecret parse_trapdoor(std::string_view text) {
  FieldReader r(text, "slstrapdoor-v1");
  TrapdoorSecret sp;
  sp.p = parse_hex_int(r.take("p"));
  sp.q = parse_hex_int(r.take("q"));
  sp.phi = parse_hex_int(r.take("phi"));
  r.finish();
  if (sp.phi != (sp.p - 1) * (sp.q - 1)) {
    throw Error(ErrorCode::kParse, "phi != (p-1)(q-1)");
  }
  return sp;
}

std::string serialize_signature(const ShortLivedSignature& sig) {
  std::string out = "slssig-v1\n";
  out += "sigma: " + to_hex(sig.sigma) + "\n";
  out += "beacon_round: " + std::to_string(sig.beacon.round) + "\n";
  out += "beacon_value: " + to_hex(sig.beacon.value) + "\n";
  out += "beacon_time: " + std::to_string(sig.beacon.timestamp) + "\n";
  return out;
}

ShortLivedSignature parse_signature(std::string_view text) {
  FieldReader r(text, "slssig-v1");
  ShortLivedSignature sig;
  const std::string& sigma = r.take("sigma");
  sig.sigma = from_hex(sigma);
  if (to_hex(sig.sigma) != sigma) {
    throw Error(ErrorCode::kParse, "sigma must be lowercase hex");
  }
  sig.beacon.round = parse_decimal<uint64_t>(r.take("beacon_round"));
  sig.beacon.value = parse_fixed_hex<32>(r.take("beacon_value"));
  sig.beacon.timestamp = parse_decimal<int64_t>(r.take("beacon_time"));
  r.finish();
  return sig;
}

std::string serialize_beacon(const Beacon& beacon) {
  return "seed: " + to_hex(beacon.seed()) + "\nperiod: " + std::to_string(beacon.period()) +
         "\ngenesis: " + std::to_string(beacon.genesis()) + "\n";
}

Beacon parse_beacon(std::string_view text) {
  FieldReader r(text, "");
  const BeaconSeed seed = parse_fixed_hex<32>(r.take("seed"));
  const auto period = parse_decimal<uint64_t>(r.take("period"));
  int64_t genesis = 0;
  if (r.has("genesis")) genesis = parse_decimal<int64_t>(r.take("genesis"));
  r.finish();
  return checked([&] { return Beacon(seed, period, genesis); });
}

std::string serialize_calibration(const bench::CalibrationResult& cal) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), cal.rate);
  return "slscal-v1\nlambda: " + std::to_string(cal.lambda) +
         "\nsample_t: " + std::to_string(cal.sample_t) + "\nrate: " +
         std::string(buf, end) + "\n";
}

bench::CalibrationResult parse_calibration(std::string_view text) {
  FieldReader r(text, "slscal-v1");
  bench::CalibrationResult cal{};
  cal.lambda = parse_decimal<unsigned>(r.take("lambda"));
  cal.sample_t = parse_decimal<uint64_t>(r.take("sample_t"));
  cal.rate = parse_decimal<double>(r.take("rate"));
  r.finish();
  if (!(cal.rate > 0)) {
    throw Error(ErrorCode::kParse, "calibration rate must be positive");
  }
  return cal;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents,
                bool owner_only) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIo, "cannot write " + path.string());
    }
    out << contents;
    if (!out.flush()) {
      throw Error(ErrorCode::kIo, "failed writing " + path.string());
    }
  }
  if (owner_only) {
    namespace fs = std::filesystem;
    fs::permissions(path, fs::perms::owner_read | fs::perms::owner_write,
                    fs::perm_options::replace);
  }
}

}  // namespace sls::formats
