#include "selfsense/agent/backend.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <map>
#include <nlohmann/json.hpp>
#include <thread>

#include "selfsense/agent/mock_backend.hpp"
#include "selfsense/errors.hpp"
#include "selfsense/io/base64.hpp"
#include "selfsense/io/jsonl.hpp"
#include "selfsense/io/png.hpp"

namespace selfsense::agent {

BackendKind backend_kind_from_string(const std::string& name) {
  if (name == "live") return BackendKind::Live;
  if (name == "mock") return BackendKind::Mock;
  if (name == "replay") return BackendKind::Replay;
  throw ConfigError("unknown backend kind: " + name);
}

std::string to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::Live: return "live";
    case BackendKind::Mock: return "mock";
    case BackendKind::Replay: return "replay";
  }
  return "mock";
}

void BackendConfig::validate() const {
  if (kind == BackendKind::Live) {
    if (endpoint.empty()) throw ConfigError("live backend requires an endpoint URL");
    if (api_key_env.empty()) throw ConfigError("live backend requires an api key env var name");
  }
  if (kind == BackendKind::Replay && transcript_path.empty()) {
    throw ConfigError("replay backend requires a transcript path");
  }
}

namespace {

class MockBackend final : public TextBackend {
 public:
  explicit MockBackend(std::uint64_t seed) : seed_(seed) {}

  std::string complete(const BackendRequest& request) override {
    if (!request.packet || !request.memory) {
      throw Error("mock backend needs packet and memory context");
    }
    return mock_predict(*request.packet, *request.memory, seed_);
  }

 private:
  std::uint64_t seed_;
};

class ReplayBackend final : public TextBackend {
 public:
  explicit ReplayBackend(const std::filesystem::path& transcript) {
    io::for_each_jsonl(transcript, [this](const nlohmann::json& j) {
      if (j.contains("iteration") && j.contains("response") && !j["response"].is_null()) {
        responses_[j["iteration"].get<int>()] = j["response"].get<std::string>();
      }
    });
  }

  std::string complete(const BackendRequest& request) override {
    // Transcript records are 1-based; requests carry the 0-based index.
    const auto it = responses_.find(request.iteration + 1);
    if (it == responses_.end()) {
      throw BackendUnavailable("replay transcript has no response for iteration " +
                               std::to_string(request.iteration + 1));
    }
    return it->second;
  }

 private:
  std::map<int, std::string> responses_;
};

class LiveBackend final : public TextBackend {
 public:
  explicit LiveBackend(BackendConfig config) : config_(std::move(config)) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
      throw AuthMissing("environment variable " + config_.api_key_env + " is not set");
    }
    api_key_ = key;

    // Split https://host[:port]/path into base URL and request path.
    const auto scheme_end = config_.endpoint.find("://");
    if (scheme_end == std::string::npos) {
      throw ConfigError("endpoint must carry a scheme: " + config_.endpoint);
    }
    const auto path_start = config_.endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      base_ = config_.endpoint;
      path_ = "/";
    } else {
      base_ = config_.endpoint.substr(0, path_start);
      path_ = config_.endpoint.substr(path_start);
    }
  }

  std::string complete(const BackendRequest& request) override {
    const std::string body = request_body(request);
    std::string last_error;

    for (int attempt = 0; attempt <= config_.retries; ++attempt) {
      if (attempt > 0) {
        const auto backoff = std::chrono::milliseconds(
            static_cast<int>(500.0 * std::pow(2.0, attempt - 1)));
        std::this_thread::sleep_for(backoff);
      }

      httplib::Client client(base_);
      client.set_connection_timeout(static_cast<int>(config_.timeout_s), 0);
      client.set_read_timeout(static_cast<int>(config_.timeout_s), 0);
      client.set_bearer_token_auth(api_key_);

      auto result = client.Post(path_, body, "application/json");
      if (!result) {
        last_error = "transport error: " + httplib::to_string(result.error());
        continue;
      }
      if (result->status == 429 || result->status >= 500) {
        last_error = "status " + std::to_string(result->status);
        continue;
      }
      if (result->status != 200) {
        throw BackendUnavailable("backend rejected the request with status " +
                                 std::to_string(result->status) + ": " + result->body);
      }
      return extract_text(result->body);
    }
    throw BackendUnavailable("backend unreachable after " +
                             std::to_string(config_.retries + 1) + " attempts (" +
                             last_error + ")");
  }

 private:
  std::string request_body(const BackendRequest& request) const {
    nlohmann::ordered_json message;
    message["role"] = "user";
    if (request.image) {
      const auto png = io::encode_png(request.image->width, request.image->height,
                                      request.image->pixels);
      nlohmann::ordered_json parts = nlohmann::ordered_json::array();
      parts.push_back({{"type", "text"}, {"text", request.prompt}});
      parts.push_back({{"type", "image_url"},
                       {"image_url",
                        {{"url", "data:image/png;base64," + io::base64_encode(png)}}}});
      message["content"] = parts;
    } else {
      message["content"] = request.prompt;
    }

    nlohmann::ordered_json body;
    body["model"] = config_.model;
    body["messages"] = nlohmann::ordered_json::array({message});
    body["temperature"] = 0;
    return body.dump();
  }

  static std::string extract_text(const std::string& response_body) {
    const nlohmann::json j = nlohmann::json::parse(response_body, nullptr, false);
    if (j.is_discarded()) throw BackendUnavailable("backend returned invalid JSON");
    try {
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw BackendUnavailable("backend response missing choices[0].message.content");
    }
  }

  BackendConfig config_;
  std::string api_key_;
  std::string base_;
  std::string path_;
};

}  // namespace

std::unique_ptr<TextBackend> make_backend(const BackendConfig& config) {
  config.validate();
  switch (config.kind) {
    case BackendKind::Mock: return std::make_unique<MockBackend>(config.mock_seed);
    case BackendKind::Replay: return std::make_unique<ReplayBackend>(config.transcript_path);
    case BackendKind::Live: return std::make_unique<LiveBackend>(config);
  }
  throw ConfigError("unreachable backend kind");
}

}  // namespace selfsense::agent
