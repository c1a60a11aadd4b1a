/*
 * Copyright 2026 The atlas authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace atlas::openalex {

enum class Endpoint { works, authors };

/// One aggregate query against the works API. Filters are conjunctive;
/// a value may OR together alternatives with '|'. Queries serialize to a
/// canonical string (sorted, percent-encoded, mailto excluded) that is
/// injective on the whitelisted filter space and keys the fixture cache.
struct ApiQuery {
  Endpoint endpoint = Endpoint::works;
  std::vector<std::pair<std::string, std::string>> filters;
  std::string group_by;
  std::string select;
  std::string cursor;    // non-empty selects cursor-paged listing mode
  int per_page = 0;      // 0 = unset
  std::string mailto;    // etiquette only; never part of the cache key

  ApiQuery& filter(std::string key, std::string value);

  /// Canonical cache key. Validates the query; throws ValidationError for
  /// non-whitelisted filter keys or a grouped query in listing mode.
  std::string canonical() const;

  /// Request target ("/works?filter=...") in OpenAlex wire syntax.
  std::string request_target() const;
};

const std::set<std::string>& filter_key_whitelist();

struct GroupedCount {
  std::string key;
  std::uint64_t count = 0;
};

enum class FetchMode { record, replay, live };

/// Verbatim response bodies keyed by the canonical query string, one file
/// per query plus a small sidecar with the retrieval timestamp. Replay mode
/// never touches the network; a miss is an error.
class FixtureStore {
public:
  FixtureStore(std::filesystem::path root, FetchMode mode);

  FetchMode mode() const { return mode_; }
  const std::filesystem::path& root() const { return root_; }

  std::optional<std::string> lookup(const std::string& canonical) const;
  void put(const std::string& canonical, const std::string& body);
  std::optional<std::string> retrieved_at(const std::string& canonical) const;

  /// Overrides the recorded timestamp (used when generating reproducible
  /// corpora); empty string restores wall-clock stamping.
  void set_fixed_timestamp(std::string stamp) { fixed_timestamp_ = std::move(stamp); }

  static std::string key_of(const std::string& canonical);

private:
  std::filesystem::path body_path(const std::string& key) const;
  std::filesystem::path meta_path(const std::string& key) const;

  std::filesystem::path root_;
  FetchMode mode_;
  std::string fixed_timestamp_;
  std::unique_ptr<std::mutex> write_mutex_;  // keeps the store movable
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
public:
  virtual ~HttpTransport() = default;
  /// GET `target` (path plus query string). Throws FetchError on
  /// transport-level failure.
  virtual HttpResponse get(const std::string& target) = 0;
};

/// TLS transport to the given API host.
std::unique_ptr<HttpTransport> make_https_transport(const std::string& host);

/// Token-bucket limiter; acquire() blocks until a request slot is free.
/// Clock and sleeper are injectable so tests run without wall-clock waits.
class TokenBucket {
public:
  using Clock = std::function<double()>;        // seconds, monotonic
  using Sleeper = std::function<void(double)>;  // sleep for seconds

  TokenBucket(double per_second, double burst = 1.0, Clock clock = {}, Sleeper sleeper = {});
  void acquire();

private:
  double rate_;
  double burst_;
  double tokens_;
  double last_refill_;
  Clock clock_;
  Sleeper sleep_;
  std::mutex mutex_;
};

struct ClientOptions {
  double requests_per_second = 5.0;
  int max_attempts = 3;
  double backoff_initial_seconds = 0.5;
  std::string mailto;
  int listing_page_size = 200;
  TokenBucket::Clock clock;      // test hooks; empty = steady_clock
  TokenBucket::Sleeper sleeper;  // test hooks; empty = this_thread::sleep_for
};

/// Fetches aggregate counts and author-level listings, with record/replay
/// through the FixtureStore. Retries transport errors and HTTP 429/5xx with
/// exponential backoff; all other statuses fail immediately.
class Client {
public:
  Client(FixtureStore store, std::unique_ptr<HttpTransport> transport, ClientOptions options = {});

  /// `meta.count` for a works filter set.
  std::uint64_t fetch_work_count(const ApiQuery& query);

  /// Author groups sorted by count descending (ties by key ascending), the
  /// unknown-identifier sentinel removed, at most 199 entries.
  std::vector<GroupedCount> fetch_top_authors(const ApiQuery& query);

  /// Union of the author's own institution country codes over all works
  /// published in `year`. Empty set when the author has no works or only
  /// unknown-country affiliations that year.
  std::set<std::string> fetch_author_country_set(const std::string& author_id, int year);

  const FixtureStore& store() const { return store_; }

  /// Canonical strings of every query issued through this client, in first
  /// issue order; feeds the snapshot manifest.
  std::vector<std::string> issued_queries() const;

  ApiQuery prepared(ApiQuery query) const;  // stamps mailto from options

private:
  std::string fetch_body(const ApiQuery& query);
  std::string network_fetch(const ApiQuery& query);

  FixtureStore store_;
  std::unique_ptr<HttpTransport> transport_;
  ClientOptions options_;
  TokenBucket bucket_;
  TokenBucket::Sleeper backoff_sleep_;
  mutable std::mutex issued_mutex_;
  std::vector<std::string> issued_;
  std::set<std::string> issued_seen_;
};

/// Strips an OpenAlex URL prefix from an entity id
/// ("https://openalex.org/A123" -> "A123"); bare ids pass through.
std::string short_id(std::string_view id);

}  // namespace atlas::openalex
