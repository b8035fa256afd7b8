#pragma once

#include <sstream>
#include <string>

#include "lexsimp/lexicons.hpp"
#include "lexsimp/mock_mlm.hpp"

namespace lexsimp::testing {

/// Bundle built from inline resource text; empty strings give empty resources.
struct BundleText {
  std::string synonyms;
  std::string frequency;
  std::string valid;
  std::string sememes;
  std::string embeddings = "0 1\n";
};

inline LexiconBundle make_bundle(const BundleText& t) {
  std::istringstream syn(t.synonyms), freq(t.frequency), valid(t.valid), sem(t.sememes),
      emb(t.embeddings);
  return LexiconBundle{SynonymThesaurus::parse(syn), FrequencyTable::parse(freq),
                       ValidWordList::parse(valid), SememeKB::parse(sem),
                       EmbeddingTable::parse(emb)};
}

inline MockMlmBackend make_mock(const std::string& text) {
  std::istringstream in(text);
  return MockMlmBackend::parse(in);
}

}  // namespace lexsimp::testing
