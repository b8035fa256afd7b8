#pragma once

#include <string>

#include "lexsimp/mlm.hpp"

namespace lexsimp {

/// Adapter for a real masked LM served over HTTP (see tools/mlm_server.py).
///
/// Both queries POST a JSON body carrying `model`, `device`, `tokens`,
/// `pair_boundary` (int or null) and `position`:
///   /predict      + `top_n`  ->  {"entries": [{"token": t, "prob": p}, ...]}
///   /probability  + `token`  ->  {"probability": p}
/// A fresh connection is made per call, so concurrent use is safe.
class HttpMlmBackend final : public MlmBackend {
 public:
  struct Options {
    std::string url;  ///< e.g. "http://127.0.0.1:8765"
    std::string model;
    std::string device = "cpu";
    double timeout_seconds = 60.0;
    double ceiling_loss = kDefaultCeilingLoss;
  };

  explicit HttpMlmBackend(Options options);

  /// GET /health; throws ResourceError when the server is unreachable.
  void ping() const;

 protected:
  MaskDistribution do_predict(const TokenSequence& seq, std::size_t position,
                              std::size_t top_n) const override;
  std::optional<double> do_probability(const TokenSequence& seq, std::size_t position,
                                       const std::string& token) const override;

 private:
  std::string post(const std::string& path, const std::string& body) const;
  Options options_;
};

}  // namespace lexsimp
