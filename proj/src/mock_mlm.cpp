#include "lexsimp/mock_mlm.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

#include "lexsimp/error.hpp"

namespace lexsimp {
namespace {

void check_row(const std::string& key, std::vector<TokenProb>& row) {
  std::set<std::string> seen;
  double sum = 0.0;
  for (const auto& e : row) {
    if (e.token.empty()) throw ValidationError("row '" + key + "': empty token");
    if (!(e.prob > 0.0 && e.prob <= 1.0))
      throw ValidationError("row '" + key + "': probability of '" + e.token + "' not in (0,1]");
    if (!seen.insert(e.token).second)
      throw ValidationError("row '" + key + "': duplicate token '" + e.token + "'");
    sum += e.prob;
  }
  if (sum > 1.0 + 1e-6) throw ValidationError("row '" + key + "': probabilities sum above 1");
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    return a.token < b.token;
  });
}

std::vector<TokenProb> parse_row(const std::string& text) {
  std::vector<TokenProb> row;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(start, comma - start);
    start = comma + 1;
    if (item.find_first_not_of(' ') == std::string::npos) {
      if (comma == text.size()) break;
      throw ValidationError("empty entry");
    }
    const std::size_t colon = item.rfind(':');
    if (colon == std::string::npos || colon == 0) throw ValidationError("entry '" + item + "' is not token:prob");
    const std::string prob_text = item.substr(colon + 1);
    std::size_t used = 0;
    double prob = 0.0;
    try {
      prob = std::stod(prob_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != prob_text.size()) throw ValidationError("bad probability in '" + item + "'");
    row.push_back({item.substr(0, colon), prob});
  }
  return row;
}

}  // namespace

MockMlmBackend::MockMlmBackend(Table table, double ceiling_loss)
    : MlmBackend(ceiling_loss), table_(std::move(table)) {
  for (auto& [key, row] : table_) check_row(key, row);
}

MockMlmBackend MockMlmBackend::parse(std::istream& in, const std::string& source,
                                     double ceiling_loss) {
  Table table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ResourceError(source + ":" + std::to_string(lineno) + ": expected 'key<TAB>row'");
    const std::string key = line.substr(0, tab);
    try {
      auto row = parse_row(line.substr(tab + 1));
      check_row(key, row);
      if (!table.emplace(key, std::move(row)).second)
        throw ValidationError("duplicate key '" + key + "'");
    } catch (const ValidationError& e) {
      throw ResourceError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return MockMlmBackend(std::move(table), ceiling_loss);
}

MockMlmBackend MockMlmBackend::load(const std::string& path, double ceiling_loss) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open mock MLM table: " + path);
  return parse(in, path, ceiling_loss);
}

std::vector<std::string> MockMlmBackend::lookup_keys(const TokenSequence& seq,
                                                     std::size_t position) {
  std::size_t begin = 0;
  std::size_t end = seq.tokens.size();
  if (seq.pair_boundary) {
    if (position < *seq.pair_boundary) {
      end = *seq.pair_boundary;
    } else {
      begin = *seq.pair_boundary;
    }
  }
  std::string full;
  for (std::size_t i = begin; i < end; ++i) full += i == position ? "_" : seq.tokens[i];
  const std::string left = position > begin ? seq.tokens[position - 1] : "^";
  const std::string right = position + 1 < end ? seq.tokens[position + 1] : "$";
  return {full, left + "_" + right, "*"};
}

const std::vector<TokenProb>* MockMlmBackend::row_for(const TokenSequence& seq,
                                                      std::size_t position) const {
  for (const auto& key : lookup_keys(seq, position)) {
    auto it = table_.find(key);
    if (it != table_.end()) return &it->second;
  }
  return nullptr;
}

MaskDistribution MockMlmBackend::do_predict(const TokenSequence& seq, std::size_t position,
                                            std::size_t top_n) const {
  MaskDistribution dist;
  if (const auto* row = row_for(seq, position)) {
    const std::size_t n = std::min(top_n, row->size());
    dist.entries.assign(row->begin(), row->begin() + static_cast<std::ptrdiff_t>(n));
  }
  return dist;
}

std::optional<double> MockMlmBackend::do_probability(const TokenSequence& seq,
                                                     std::size_t position,
                                                     const std::string& token) const {
  if (const auto* row = row_for(seq, position)) {
    for (const auto& e : *row) {
      if (e.token == token) return e.prob;
    }
  }
  return std::nullopt;
}

}  // namespace lexsimp
