// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <array>
#include <optional>
#include <string>

#include "hldg/ledger/tx.hpp"

namespace hldg::consensus {

using hldg::ledger::Address;
using hldg::ledger::Bytes;
using hldg::ledger::Digest32;

/// Signature scheme identifiers recorded in ChainConfig and key files.
enum class SigScheme : uint8_t { Ed25519 = 1 };

constexpr size_t kSeedLen = 32;
constexpr size_t kPublicKeyLen = 32;
constexpr size_t kSecretKeyLen = 64;
constexpr size_t kSignatureLen = 64;

struct KeyPair {
    Bytes secret_key; // 64 bytes (seed || public)
    Bytes public_key; // 32 bytes
};

/// Deterministic keypair from a 32-byte seed.
KeyPair keygen(const std::array<uint8_t, kSeedLen>& seed);
KeyPair keygen(const Digest32& seed);

Bytes sign(const Bytes& secret_key, std::span<const uint8_t> message);
bool verify(std::span<const uint8_t> public_key, std::span<const uint8_t> message,
            std::span<const uint8_t> signature);

/// Account / node address: sha256 of the public key bytes.
Address address_of(std::span<const uint8_t> public_key);

/// Key file body: hex(scheme byte || secret key bytes), one line.
std::string encode_key_file(const KeyPair& kp);
std::optional<KeyPair> parse_key_file(std::string_view text);

} // namespace hldg::consensus
