#include "gallery/text.hpp"

#include <algorithm>
#include <memory>

#include <unicode/uchar.h>
#include <unicode/ucasemap.h>
#include <unicode/utf8.h>

#include "gallery/error.hpp"

namespace gallery {
namespace {

struct CaseMapCloser {
  void operator()(UCaseMap* map) const { ucasemap_close(map); }
};

UCaseMap* thread_case_map() {
  thread_local std::unique_ptr<UCaseMap, CaseMapCloser> map = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<UCaseMap, CaseMapCloser> created(
        ucasemap_open("", U_FOLD_CASE_DEFAULT, &status));
    if (U_FAILURE(status)) throw Error("ICU case map unavailable");
    return created;
  }();
  return map.get();
}

// Calls fn(code_point, begin, end) for each UTF-8 sequence.
template <typename Fn>
void for_each_code_point(std::string_view text, Fn&& fn) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    fn(c, static_cast<std::size_t>(start), static_cast<std::size_t>(i));
  }
}

bool is_space(UChar32 c) { return c >= 0 && u_isUWhiteSpace(c); }

}  // namespace

std::string fold_case(std::string_view utf8) {
  if (utf8.empty()) return {};
  UCaseMap* map = thread_case_map();
  std::string out(utf8.size() + 16, '\0');
  for (int attempt = 0; attempt < 2; ++attempt) {
    UErrorCode status = U_ZERO_ERROR;
    const std::int32_t written = ucasemap_utf8FoldCase(
        map, out.data(), static_cast<std::int32_t>(out.size()), utf8.data(),
        static_cast<std::int32_t>(utf8.size()), &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
      out.assign(static_cast<std::size_t>(written), '\0');
      continue;
    }
    if (U_FAILURE(status)) return std::string(utf8);
    out.resize(static_cast<std::size_t>(written));
    return out;
  }
  return std::string(utf8);
}

std::string trim(std::string_view utf8) {
  std::size_t first = utf8.size();
  std::size_t last = 0;
  for_each_code_point(utf8, [&](UChar32 c, std::size_t begin, std::size_t end) {
    if (is_space(c)) return;
    first = std::min(first, begin);
    last = end;
  });
  if (first >= last) return {};
  return std::string(utf8.substr(first, last - first));
}

std::string normalize_text(std::string_view utf8) {
  const std::string folded = fold_case(utf8);
  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for_each_code_point(folded, [&](UChar32 c, std::size_t begin, std::size_t end) {
    if (is_space(c)) {
      pending_space = !out.empty();
      return;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.append(folded, begin, end - begin);
  });
  return out;
}

std::vector<std::string> token_set(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    const std::size_t next = normalized.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? normalized.size() : next;
    if (end > pos) tokens.emplace_back(normalized.substr(pos, end - pos));
    pos = end + 1;
  }
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t united = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(united);
}

}  // namespace gallery
