#pragma once

// Regression corpus of worked examples with known answers.

#include <string>
#include <vector>

namespace a1 {

struct CorpusRow {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Every example is evaluated; an exception becomes a failing row.
std::vector<CorpusRow> run_corpus();

}  // namespace a1
