#include "sls/hash.hpp"

namespace sls {

namespace {

struct SodiumInit {
  SodiumInit() {
    if (sodium_init() < 0) {
      std::abort();
    }
  }
};

}  // namespace

Sha256::Sha256() {
  static const SodiumInit init;
  crypto_hash_sha256_init(&state_);
}

Sha256& Sha256::update(ByteView data) {
  crypto_hash_sha256_update(&state_, data.data(), data.size());
  return *this;
}

Digest Sha256::finish() {
  Digest out;
  crypto_hash_sha256_final(&state_, out.data());
  return out;
}

Digest sha256(ByteView data) {
  return Sha256().update(data).finish();
}

Digest domain_hash(std::string_view domain, std::initializer_list<ByteView> parts) {
  Sha256 h;
  h.update(as_bytes(kHashPrefix));
  if (!domain.empty()) {
    h.update(as_bytes("/"));
    h.update(as_bytes(domain));
  }
  for (ByteView part : parts) {
    Bytes len;
    append_u64be(part.size(), &len);
    h.update(len);
    h.update(part);
  }
  return h.finish();
}

}  // namespace sls
