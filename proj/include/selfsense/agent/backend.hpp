#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "selfsense/agent/memory.hpp"
#include "selfsense/fusion/packet.hpp"

namespace selfsense::agent {

enum class BackendKind { Live, Mock, Replay };

BackendKind backend_kind_from_string(const std::string& name);
std::string to_string(BackendKind kind);

struct BackendConfig {
  BackendKind kind = BackendKind::Mock;
  std::string endpoint;                      // live: e.g. https://host/v1/chat/completions
  std::string model;                         // live: model name
  std::string api_key_env = "MODEL_API_KEY";  // live: env var carrying the key
  double timeout_s = 30.0;
  int retries = 2;
  std::filesystem::path transcript_path;     // replay: recorded session
  std::uint64_t mock_seed = 0;

  /// Live requires endpoint + key variable name; replay requires a
  /// transcript path. Throws ConfigError.
  void validate() const;
};

struct BackendRequest {
  std::string prompt;
  std::shared_ptr<const sim::ImageFrame> image;
  int iteration = 0;  // 0-based prediction index
  // Structured context consumed by the deterministic mock backend.
  const fusion::FusedPacket* packet = nullptr;
  const MemoryState* memory = nullptr;
};

class TextBackend {
 public:
  virtual ~TextBackend() = default;

  /// One completion per call. Live backends retry transient failures with
  /// exponential backoff and throw BackendUnavailable when retries are
  /// exhausted, or AuthMissing when the key variable is unset.
  virtual std::string complete(const BackendRequest& request) = 0;
};

std::unique_ptr<TextBackend> make_backend(const BackendConfig& config);

}  // namespace selfsense::agent
