#include "lexsimp/http_mlm.hpp"

#include <httplib.h>
#include <json.hpp>

#include "lexsimp/error.hpp"

namespace lexsimp {
namespace {

nlohmann::json request_body(const HttpMlmBackend::Options& o, const TokenSequence& seq,
                            std::size_t position) {
  nlohmann::json j;
  j["model"] = o.model;
  j["device"] = o.device;
  j["tokens"] = seq.tokens;
  j["pair_boundary"] = seq.pair_boundary ? nlohmann::json(*seq.pair_boundary) : nlohmann::json();
  j["position"] = position;
  return j;
}

httplib::Client make_client(const HttpMlmBackend::Options& o) {
  httplib::Client cli(o.url);
  const auto secs = static_cast<time_t>(o.timeout_seconds);
  cli.set_connection_timeout(secs, 0);
  cli.set_read_timeout(secs, 0);
  cli.set_write_timeout(secs, 0);
  return cli;
}

}  // namespace

HttpMlmBackend::HttpMlmBackend(Options options)
    : MlmBackend(options.ceiling_loss), options_(std::move(options)) {
  if (options_.url.empty()) throw ConfigError("http MLM backend needs a url");
}

void HttpMlmBackend::ping() const {
  auto cli = make_client(options_);
  auto res = cli.Get("/health");
  if (!res || res->status != 200)
    throw ResourceError("MLM server not reachable at " + options_.url);
}

std::string HttpMlmBackend::post(const std::string& path, const std::string& body) const {
  auto cli = make_client(options_);
  auto res = cli.Post(path, body, "application/json");
  if (!res) {
    throw Error("MLM server " + options_.url + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error("MLM server " + options_.url + path + ": HTTP " + std::to_string(res->status) +
                " " + res->body);
  }
  return res->body;
}

MaskDistribution HttpMlmBackend::do_predict(const TokenSequence& seq, std::size_t position,
                                            std::size_t top_n) const {
  auto body = request_body(options_, seq, position);
  body["top_n"] = top_n;
  const auto reply = nlohmann::json::parse(post("/predict", body.dump()));
  MaskDistribution dist;
  for (const auto& e : reply.at("entries")) {
    dist.entries.push_back({e.at("token").get<std::string>(), e.at("prob").get<double>()});
  }
  return dist;
}

std::optional<double> HttpMlmBackend::do_probability(const TokenSequence& seq,
                                                     std::size_t position,
                                                     const std::string& token) const {
  auto body = request_body(options_, seq, position);
  body["token"] = token;
  const auto reply = nlohmann::json::parse(post("/probability", body.dump()));
  const auto& p = reply.at("probability");
  if (p.is_null()) return std::nullopt;
  return p.get<double>();
}

}  // namespace lexsimp
