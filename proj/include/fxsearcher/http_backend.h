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

#ifndef FXSEARCHER_HTTP_BACKEND_H_
#define FXSEARCHER_HTTP_BACKEND_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fxsearcher/embedding.h"

namespace fxsearcher {

struct RetryPolicy {
  // One entry per retry; the request is attempted backoff_seconds.size() + 1
  // times in total.
  std::vector<double> backoff_seconds = {0.5, 1.0, 2.0};
  // Defaults to std::this_thread::sleep_for.
  std::function<void(double seconds)> sleep;
};

// Client for the embedding service protocol:
//   GET  /v1/info        -> {"embedding_dim", "sample_rate", "model_id"}
//   POST /v1/embed/text  {"texts": [...]}                  -> {"embeddings": [[...]]}
//   POST /v1/embed/audio {"sample_rate", "audio_b64"}      -> {"embedding": [...]}
// Connection failures and 5xx answers (503 while the model loads) are retried
// per the policy and end in TransportError; 4xx answers and malformed bodies
// raise ProtocolError immediately.
class HttpBackend : public EmbeddingBackend {
 public:
  explicit HttpBackend(std::string base_url, RetryPolicy retry = {});

  BackendInfo Info() override;
  std::vector<std::vector<float>> EmbedTexts(
      const std::vector<std::string>& texts) override;
  std::vector<float> EmbedAudio(std::span<const float> mono,
                                int sample_rate) override;

 private:
  std::string Request(const std::string& method, const std::string& path,
                      const std::string& body);

  std::string base_url_;
  RetryPolicy retry_;
};

// Serves any EmbeddingBackend over the same protocol. Used to expose the
// builtin test backend to other processes and to exercise HttpBackend.
class BackendServer {
 public:
  explicit BackendServer(std::shared_ptr<EmbeddingBackend> backend);
  ~BackendServer();
  BackendServer(const BackendServer&) = delete;
  BackendServer& operator=(const BackendServer&) = delete;

  // Binds (port 0 picks a free port), serves on a background thread and
  // returns the bound port.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks serving on the calling thread.
  bool Listen(const std::string& host, int port);
  void Stop();

  // While not ready every endpoint answers 503.
  void set_ready(bool ready);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fxsearcher

#endif  // FXSEARCHER_HTTP_BACKEND_H_
