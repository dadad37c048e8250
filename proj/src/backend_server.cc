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

#include <atomic>
#include <cmath>
#include <thread>
#include <utility>

#include "fxsearcher/base64.h"
#include "fxsearcher/errors.h"
#include "fxsearcher/http_backend.h"
#include "httplib.h"
#include "json.hpp"

namespace fxsearcher {
namespace {

using nlohmann::json;

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, int status, const std::string& message) {
  Reply(res, status, json{{"error", message}});
}

}  // namespace

struct BackendServer::Impl {
  std::shared_ptr<EmbeddingBackend> backend;
  httplib::Server server;
  std::thread thread;
  std::atomic<bool> ready{true};

  bool CheckReady(httplib::Response& res) const {
    if (!ready) ReplyError(res, 503, "model is loading");
    return ready;
  }

  void HandleInfo(httplib::Response& res) {
    if (!CheckReady(res)) return;
    const BackendInfo info = backend->Info();
    Reply(res, 200,
          json{{"embedding_dim", info.embedding_dim},
               {"sample_rate", info.sample_rate},
               {"model_id", info.model_id}});
  }

  void HandleText(const httplib::Request& req, httplib::Response& res) {
    if (!CheckReady(res)) return;
    json j;
    try {
      j = json::parse(req.body);
    } catch (const json::exception&) {
      return ReplyError(res, 400, "request body is not valid JSON");
    }
    if (!j.is_object() || !j.contains("texts") || !j["texts"].is_array() ||
        j["texts"].empty()) {
      return ReplyError(res, 400, "expected {\"texts\": [string, ...]}");
    }
    std::vector<std::string> texts;
    for (const auto& t : j["texts"]) {
      if (!t.is_string() || t.get<std::string>().empty()) {
        return ReplyError(res, 400, "texts must be non-empty strings");
      }
      texts.push_back(t.get<std::string>());
    }
    try {
      Reply(res, 200, json{{"embeddings", backend->EmbedTexts(texts)}});
    } catch (const std::exception& e) {
      ReplyError(res, 500, e.what());
    }
  }

  void HandleAudio(const httplib::Request& req, httplib::Response& res) {
    if (!CheckReady(res)) return;
    json j;
    try {
      j = json::parse(req.body);
    } catch (const json::exception&) {
      return ReplyError(res, 400, "request body is not valid JSON");
    }
    if (!j.is_object() || !j.contains("sample_rate") ||
        !j["sample_rate"].is_number_integer() || !j.contains("audio_b64") ||
        !j["audio_b64"].is_string()) {
      return ReplyError(res, 400,
                        "expected {\"sample_rate\": int, \"audio_b64\": string}");
    }
    const int rate = j["sample_rate"].get<int>();
    const int expected = backend->Info().sample_rate;
    if (rate != expected) {
      return ReplyError(res, 400, "sample_rate must be " + std::to_string(expected) +
                                      ", got " + std::to_string(rate));
    }
    std::vector<float> audio;
    try {
      audio = DecodePcmFloat32(j["audio_b64"].get<std::string>());
    } catch (const PreconditionError& e) {
      return ReplyError(res, 400, e.what());
    }
    for (float x : audio) {
      if (!std::isfinite(x)) return ReplyError(res, 400, "audio contains non-finite samples");
    }
    try {
      Reply(res, 200, json{{"embedding", backend->EmbedAudio(audio, rate)}});
    } catch (const std::exception& e) {
      ReplyError(res, 500, e.what());
    }
  }
};

BackendServer::BackendServer(std::shared_ptr<EmbeddingBackend> backend)
    : impl_(std::make_unique<Impl>()) {
  impl_->backend = std::move(backend);
  Impl* impl = impl_.get();
  impl->server.Get("/v1/info", [impl](const httplib::Request&,
                                      httplib::Response& res) { impl->HandleInfo(res); });
  impl->server.Post("/v1/embed/text",
                    [impl](const httplib::Request& req, httplib::Response& res) {
                      impl->HandleText(req, res);
                    });
  impl->server.Post("/v1/embed/audio",
                    [impl](const httplib::Request& req, httplib::Response& res) {
                      impl->HandleAudio(req, res);
                    });
}

BackendServer::~BackendServer() { Stop(); }

int BackendServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

bool BackendServer::Listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

void BackendServer::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

void BackendServer::set_ready(bool ready) { impl_->ready = ready; }

}  // namespace fxsearcher
