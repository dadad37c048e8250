// Copyright 2026 The FxSearcher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fxsearcher/http_backend.h"

#include <chrono>
#include <thread>
#include <utility>

#include "fxsearcher/base64.h"
#include "fxsearcher/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace fxsearcher {
namespace {

using nlohmann::json;

std::string ErrorText(const std::string& body) {
  try {
    const json j = json::parse(body);
    if (j.is_object() && j.contains("error") && j["error"].is_string()) {
      return j["error"].get<std::string>();
    }
  } catch (const json::exception&) {
  }
  return body;
}

std::vector<float> ToFloatVector(const json& j, const char* what) {
  if (!j.is_array()) {
    throw ProtocolError(std::string(what) + " is not an array");
  }
  std::vector<float> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ProtocolError(std::string(what) + " contains a non-number");
    }
    out.push_back(v.get<float>());
  }
  return out;
}

json ParseBody(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed response: ") + e.what());
  }
}

}  // namespace

HttpBackend::HttpBackend(std::string base_url, RetryPolicy retry)
    : base_url_(std::move(base_url)), retry_(std::move(retry)) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  if (!retry_.sleep) {
    retry_.sleep = [](double s) {
      std::this_thread::sleep_for(std::chrono::duration<double>(s));
    };
  }
}

std::string HttpBackend::Request(const std::string& method,
                                 const std::string& path,
                                 const std::string& body) {
  std::string last_error;
  const int attempts = static_cast<int>(retry_.backoff_seconds.size()) + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) retry_.sleep(retry_.backoff_seconds[attempt - 1]);
    // One client per request keeps concurrent callers independent.
    httplib::Client client(base_url_);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(120, 0);
    auto result = method == "GET"
                      ? client.Get(path)
                      : client.Post(path, body, "application/json");
    if (!result) {
      last_error = httplib::to_string(result.error());
      continue;
    }
    if (result->status >= 500) {
      last_error = "HTTP " + std::to_string(result->status) + ": " +
                   ErrorText(result->body);
      continue;
    }
    if (result->status != 200) {
      throw ProtocolError(base_url_ + path + " answered HTTP " +
                          std::to_string(result->status) + ": " +
                          ErrorText(result->body));
    }
    return result->body;
  }
  throw TransportError("embedding backend at " + base_url_ + " unreachable after " +
                           std::to_string(attempts) + " attempts: " + last_error,
                       attempts);
}

BackendInfo HttpBackend::Info() {
  const json j = ParseBody(Request("GET", "/v1/info", ""));
  if (!j.is_object() || !j.contains("embedding_dim") ||
      !j["embedding_dim"].is_number_integer() || !j.contains("sample_rate") ||
      !j["sample_rate"].is_number_integer() || !j.contains("model_id") ||
      !j["model_id"].is_string()) {
    throw ProtocolError("/v1/info response lacks embedding_dim, sample_rate or model_id");
  }
  return {j["embedding_dim"].get<int>(), j["sample_rate"].get<int>(),
          j["model_id"].get<std::string>()};
}

std::vector<std::vector<float>> HttpBackend::EmbedTexts(
    const std::vector<std::string>& texts) {
  const json request = {{"texts", texts}};
  const json j = ParseBody(Request("POST", "/v1/embed/text", request.dump()));
  if (!j.is_object() || !j.contains("embeddings") || !j["embeddings"].is_array()) {
    throw ProtocolError("/v1/embed/text response lacks embeddings");
  }
  std::vector<std::vector<float>> out;
  for (const auto& e : j["embeddings"]) out.push_back(ToFloatVector(e, "embedding"));
  return out;
}

std::vector<float> HttpBackend::EmbedAudio(std::span<const float> mono,
                                           int sample_rate) {
  const json request = {{"sample_rate", sample_rate},
                        {"audio_b64", EncodePcmFloat32(mono)}};
  const json j = ParseBody(Request("POST", "/v1/embed/audio", request.dump()));
  if (!j.is_object() || !j.contains("embedding")) {
    throw ProtocolError("/v1/embed/audio response lacks embedding");
  }
  return ToFloatVector(j["embedding"], "embedding");
}

}  // namespace fxsearcher
