// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/consensus/keys.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

#include "hldg/ledger/hex.hpp"

namespace hldg::consensus {

static void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) throw std::runtime_error("libsodium initialisation failed");
}

KeyPair keygen(const std::array<uint8_t, kSeedLen>& seed) {
    ensure_sodium();
    KeyPair kp;
    kp.public_key.resize(crypto_sign_PUBLICKEYBYTES);
    kp.secret_key.resize(crypto_sign_SECRETKEYBYTES);
    crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), seed.data());
    return kp;
}

KeyPair keygen(const Digest32& seed) {
    return keygen(seed.bytes);
}

Bytes sign(const Bytes& secret_key, std::span<const uint8_t> message) {
    ensure_sodium();
    if (secret_key.size() != kSecretKeyLen) throw std::invalid_argument("bad secret key length");
    Bytes sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                         secret_key.data());
    return sig;
}

bool verify(std::span<const uint8_t> public_key, std::span<const uint8_t> message,
            std::span<const uint8_t> signature) {
    ensure_sodium();
    if (public_key.size() != kPublicKeyLen || signature.size() != kSignatureLen)
        return false;
    return crypto_sign_verify_detached(signature.data(), message.data(),
                                       message.size(), public_key.data()) == 0;
}

Address address_of(std::span<const uint8_t> public_key) {
    return hldg::ledger::sha256(public_key);
}

std::string encode_key_file(const KeyPair& kp) {
    Bytes raw;
    raw.push_back(static_cast<uint8_t>(SigScheme::Ed25519));
    raw.insert(raw.end(), kp.secret_key.begin(), kp.secret_key.end());
    return hldg::ledger::to_hex(raw) + "\n";
}

std::optional<KeyPair> parse_key_file(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.remove_suffix(1);
    auto raw = hldg::ledger::from_hex(text);
    if (!raw || raw->size() != 1 + kSecretKeyLen) return std::nullopt;
    if ((*raw)[0] != static_cast<uint8_t>(SigScheme::Ed25519)) return std::nullopt;
    KeyPair kp;
    kp.secret_key.assign(raw->begin() + 1, raw->end());
    // ed25519 secret keys embed the public half
    kp.public_key.assign(kp.secret_key.begin() + kSeedLen, kp.secret_key.end());
    return kp;
}

} // namespace hldg::consensus
