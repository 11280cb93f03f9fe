#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallery/model.hpp"

namespace gallery {

struct CrawlPage {
  std::string url;
  std::vector<std::string> links;  // deduplicated, in page order
  std::optional<AppRecord> app;
  std::vector<std::string> intro_images;

  friend bool operator==(const CrawlPage&, const CrawlPage&) = default;
};

// Failure to fetch one URL. Carried as data; the crawl continues.
struct FetchFailure {
  std::string url;
  std::string reason;

  friend bool operator==(const FetchFailure&, const FetchFailure&) = default;
};

// Page source. Politeness (rate limits, robots rules) belongs here, not in
// the traversal. A URL that cannot be fetched is reported by throwing
// FetchError.
class Fetcher {
 public:
  virtual ~Fetcher() = default;
  virtual CrawlPage fetch(const std::string& url) = 0;
};

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CrawlResult {
  std::vector<CrawlPage> pages;  // strict BFS order
  std::vector<FetchFailure> failures;
};

// Breadth-first traversal from `seeds`. The visited set is keyed on the exact
// URL string; stops after `max_pages` successful fetches. Feed the returned
// links back as seeds for a second round.
CrawlResult crawl_bfs(const std::vector<std::string>& seeds, Fetcher& fetcher,
                      std::size_t max_pages);

// Every distinct outbound link of `pages` not itself among the pages, in order.
std::vector<std::string> frontier(const std::vector<CrawlPage>& pages);

}  // namespace gallery
