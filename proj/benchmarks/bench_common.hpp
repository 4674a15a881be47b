#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "semrank/text.hpp"

namespace bench {

inline std::vector<semrank::TokenizedDocument> news_documents(const semrank::LanguageProfile& profile) {
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::recursive_directory_iterator(
           std::filesystem::path(SEMRANK_BENCH_DATA_DIR) / "news_fixture" / "News Articles")) {
    if (e.is_regular_file()) paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<semrank::TokenizedDocument> docs;
  for (const auto& p : paths) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    docs.push_back(semrank::segment(ss.str(), profile));
  }
  return docs;
}

}  // namespace bench
