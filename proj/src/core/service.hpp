/*
Copyright 2026 The cvminer Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "core/corpus_store.hpp"
#include "core/mobility.hpp"

namespace cvminer {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  CommunityTaxonomy taxonomy = CommunityTaxonomy::standard();
  RegionGeometry geometry;
  LayoutOptions layout;
};

// JSON facade over a CorpusStore. Every response body is a JSON object
// carrying the snapshot "version" it was computed from; failures carry an
// "error" object with code and message. Mutating calls accept an optional
// "version" and answer 409 when it is not the current one.
class ApiService {
 public:
  explicit ApiService(CorpusStore& store, ServiceOptions options = {});

  HttpResponse handle(const HttpRequest& request) const;

 private:
  CorpusStore& store_;
  ServiceOptions options_;
};

// "host:port"; throws Error(InvalidArgument).
std::pair<std::string, int> parse_address(std::string_view address);

// Value of CVMINER_ADDR, or fallback when unset.
std::string address_from_env(std::string fallback = "127.0.0.1:8080");

// Serves an ApiService over HTTP on a background-capable listener.
class HttpServer {
 public:
  explicit HttpServer(const ApiService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cvminer
