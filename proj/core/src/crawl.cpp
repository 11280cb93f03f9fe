#include "gallery/crawl.hpp"

#include <set>
#include <unordered_set>

#include "gallery/error.hpp"

namespace gallery {

CrawlResult crawl_bfs(const std::vector<std::string>& seeds, Fetcher& fetcher,
                      std::size_t max_pages) {
  if (seeds.empty()) throw PreconditionError("crawl needs at least one seed");
  if (max_pages == 0) throw PreconditionError("max_pages must be at least 1");

  CrawlResult result;
  std::unordered_set<std::string> enqueued;
  std::vector<std::string> level;
  for (const auto& seed : seeds) {
    if (enqueued.insert(seed).second) level.push_back(seed);
  }

  // Level-synchronous traversal: depth d is finished before depth d+1 starts.
  while (!level.empty() && result.pages.size() < max_pages) {
    std::vector<std::string> next;
    for (const auto& url : level) {
      if (result.pages.size() >= max_pages) break;
      CrawlPage page;
      try {
        page = fetcher.fetch(url);
      } catch (const FetchError& e) {
        result.failures.push_back({url, e.what()});
        continue;
      }
      page.url = url;
      for (const auto& link : page.links) {
        if (!link.empty() && enqueued.insert(link).second) next.push_back(link);
      }
      result.pages.push_back(std::move(page));
    }
    level = std::move(next);
  }
  return result;
}

std::vector<std::string> frontier(const std::vector<CrawlPage>& pages) {
  std::set<std::string> visited;
  for (const auto& page : pages) visited.insert(page.url);
  std::vector<std::string> out;
  std::set<std::string> emitted;
  for (const auto& page : pages) {
    for (const auto& link : page.links) {
      if (!visited.contains(link) && emitted.insert(link).second) out.push_back(link);
    }
  }
  return out;
}

}  // namespace gallery
