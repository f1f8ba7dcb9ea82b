#pragma once

#include <string>

namespace ctml {

/// SHA-256 digest of the byte string, as 64 lowercase hex characters.
/// Used to fingerprint configs and output artifacts in run manifests.
std::string sha256_hex(const std::string& bytes);

}  // namespace ctml
