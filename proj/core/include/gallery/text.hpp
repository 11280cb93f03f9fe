#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gallery {

// Unicode (full) case folding of UTF-8 text.
std::string fold_case(std::string_view utf8);

// Strips leading/trailing Unicode white space.
std::string trim(std::string_view utf8);

// Case-fold, trim, and collapse internal white space runs to one ASCII space.
std::string normalize_text(std::string_view utf8);

// Space-separated tokens of already-normalized text; duplicates removed, sorted.
std::vector<std::string> token_set(std::string_view normalized);

// |A ∩ B| / |A ∪ B| over sorted unique token sets; two empty sets score 1.
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace gallery
