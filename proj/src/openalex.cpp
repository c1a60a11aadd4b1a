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

#include "atlas/openalex.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "atlas/errors.hpp"
#include "atlas/util.hpp"

namespace atlas::openalex {

namespace {

using nlohmann::json;

std::string endpoint_name(Endpoint e) {
  switch (e) {
    case Endpoint::works:
      return "works";
    case Endpoint::authors:
      return "authors";
  }
  throw ValidationError("unknown endpoint");
}

json parse_json(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw FetchError("malformed response: not valid JSON");
  return j;
}

bool is_unknown_key(const std::string& key) {
  return key.empty() || key == "unknown" || key == "Unknown";
}

}  // namespace

const std::set<std::string>& filter_key_whitelist() {
  static const std::set<std::string> keys = {
      "concepts.id",
      "publication_year",
      "from_publication_date",
      "to_publication_date",
      "institutions.country_code",
      "authorships.author.id",
  };
  return keys;
}

ApiQuery& ApiQuery::filter(std::string key, std::string value) {
  filters.emplace_back(std::move(key), std::move(value));
  return *this;
}

std::string ApiQuery::canonical() const {
  for (const auto& [key, value] : filters) {
    if (filter_key_whitelist().count(key) == 0)
      throw ValidationError("filter key not whitelisted: " + key);
    if (value.empty()) throw ValidationError("empty filter value for key: " + key);
  }
  if (!group_by.empty() && !cursor.empty())
    throw ValidationError("a grouped query cannot use cursor-paged listing mode");

  // Sorted, de-duplicated, fully percent-encoded terms; the encoding makes
  // the join unambiguous, so distinct queries get distinct keys.
  std::vector<std::string> terms;
  {
    auto sorted = filters;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const auto& [key, value] : sorted)
      terms.push_back("filter." + util::percent_encode(key) + "=" + util::percent_encode(value));
  }
  if (!group_by.empty()) terms.push_back("group_by=" + util::percent_encode(group_by));
  if (!select.empty()) terms.push_back("select=" + util::percent_encode(select));
  if (!cursor.empty()) terms.push_back("cursor=" + util::percent_encode(cursor));
  if (per_page > 0) terms.push_back("per_page=" + std::to_string(per_page));

  std::string out = endpoint_name(endpoint) + "?";
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i != 0) out += '&';
    out += terms[i];
  }
  return out;
}

std::string ApiQuery::request_target() const {
  canonical();  // reuse the validation

  std::string target = "/" + endpoint_name(endpoint);
  char sep = '?';
  if (!filters.empty()) {
    auto sorted = filters;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::string clause;
    for (const auto& [key, value] : sorted) {
      if (!clause.empty()) clause += ',';
      clause += key + ":" + value;
    }
    target += sep;
    target += "filter=" + clause;
    sep = '&';
  }
  auto add = [&](const std::string& k, const std::string& v) {
    target += sep;
    target += k + "=" + v;
    sep = '&';
  };
  if (!group_by.empty()) add("group_by", group_by);
  if (!select.empty()) add("select", select);
  if (per_page > 0) add("per-page", std::to_string(per_page));
  if (!cursor.empty()) add("cursor", util::percent_encode(cursor));
  if (!mailto.empty()) add("mailto", util::percent_encode(mailto));
  return target;
}

// --- FixtureStore ---------------------------------------------------------

FixtureStore::FixtureStore(std::filesystem::path root, FetchMode mode)
    : root_(std::move(root)), mode_(mode), write_mutex_(std::make_unique<std::mutex>()) {
  if (mode_ != FetchMode::live) std::filesystem::create_directories(root_);
}

std::string FixtureStore::key_of(const std::string& canonical) {
  return util::sha256_hex(canonical);
}

std::filesystem::path FixtureStore::body_path(const std::string& key) const {
  return root_ / (key + ".json");
}

std::filesystem::path FixtureStore::meta_path(const std::string& key) const {
  return root_ / (key + ".meta");
}

std::optional<std::string> FixtureStore::lookup(const std::string& canonical) const {
  const auto path = body_path(key_of(canonical));
  if (!std::filesystem::exists(path)) return std::nullopt;
  return util::read_file(path);
}

void FixtureStore::put(const std::string& canonical, const std::string& body) {
  const std::string key = key_of(canonical);
  std::lock_guard<std::mutex> lock(*write_mutex_);
  util::write_file_atomic(body_path(key), body);
  nlohmann::json meta;
  meta["query"] = canonical;
  meta["retrieved_at"] = fixed_timestamp_.empty() ? util::iso8601_utc_now() : fixed_timestamp_;
  util::write_file_atomic(meta_path(key), meta.dump(2) + "\n");
}

std::optional<std::string> FixtureStore::retrieved_at(const std::string& canonical) const {
  const auto path = meta_path(key_of(canonical));
  if (!std::filesystem::exists(path)) return std::nullopt;
  const auto meta = parse_json(util::read_file(path));
  if (!meta.contains("retrieved_at")) return std::nullopt;
  return meta["retrieved_at"].get<std::string>();
}

// --- transports and rate limiting ------------------------------------------

namespace {

class HttplibTransport : public HttpTransport {
public:
  explicit HttplibTransport(const std::string& host) : client_(host) {
    client_.set_connection_timeout(20, 0);
    client_.set_read_timeout(60, 0);
    client_.set_follow_location(true);
  }

  HttpResponse get(const std::string& target) override {
    auto result = client_.Get(target);
    if (!result)
      throw FetchError("transport failure: " + httplib::to_string(result.error()));
    return {result->status, result->body};
  }

private:
  httplib::SSLClient client_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_https_transport(const std::string& host) {
  return std::make_unique<HttplibTransport>(host);
}

TokenBucket::TokenBucket(double per_second, double burst, Clock clock, Sleeper sleeper)
    : rate_(per_second), burst_(std::max(burst, 1.0)), tokens_(burst_), clock_(std::move(clock)),
      sleep_(std::move(sleeper)) {
  if (!(rate_ > 0.0)) throw ValidationError("rate limit must be positive");
  if (!clock_) {
    clock_ = [] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
          .count();
    };
  }
  if (!sleep_) {
    sleep_ = [](double seconds) {
      std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    };
  }
  last_refill_ = clock_();
}

void TokenBucket::acquire() {
  std::unique_lock<std::mutex> lock(mutex_);
  for (;;) {
    const double now = clock_();
    tokens_ = std::min(burst_, tokens_ + (now - last_refill_) * rate_);
    last_refill_ = now;
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    const double wait = (1.0 - tokens_) / rate_;
    lock.unlock();
    sleep_(wait);
    lock.lock();
  }
}

// --- Client -----------------------------------------------------------------

Client::Client(FixtureStore store, std::unique_ptr<HttpTransport> transport, ClientOptions options)
    : store_(std::move(store)), transport_(std::move(transport)), options_(std::move(options)),
      bucket_(options_.requests_per_second, 1.0, options_.clock, options_.sleeper) {
  backoff_sleep_ = options_.sleeper;
  if (!backoff_sleep_) {
    backoff_sleep_ = [](double seconds) {
      std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    };
  }
}

ApiQuery Client::prepared(ApiQuery query) const {
  if (query.mailto.empty()) query.mailto = options_.mailto;
  return query;
}

std::vector<std::string> Client::issued_queries() const {
  std::lock_guard<std::mutex> lock(issued_mutex_);
  return issued_;
}

std::string Client::fetch_body(const ApiQuery& query) {
  const std::string canonical = query.canonical();
  {
    std::lock_guard<std::mutex> lock(issued_mutex_);
    if (issued_seen_.insert(canonical).second) issued_.push_back(canonical);
  }

  switch (store_.mode()) {
    case FetchMode::replay: {
      auto body = store_.lookup(canonical);
      if (!body) throw ReplayMissError("replay miss (offline mode): " + canonical);
      return *body;
    }
    case FetchMode::record: {
      if (auto body = store_.lookup(canonical)) return *body;
      std::string body = network_fetch(query);
      store_.put(canonical, body);
      return body;
    }
    case FetchMode::live:
      return network_fetch(query);
  }
  throw FetchError("unreachable fetch mode");
}

std::string Client::network_fetch(const ApiQuery& query) {
  if (transport_ == nullptr) throw FetchError("no transport configured for network fetch");
  const std::string target = query.request_target();

  std::string last_error;
  for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
    if (attempt > 0)
      backoff_sleep_(options_.backoff_initial_seconds * std::pow(2.0, attempt - 1));
    bucket_.acquire();

    HttpResponse response;
    try {
      response = transport_->get(target);
    } catch (const FetchError& e) {
      last_error = e.what();  // transport error, retryable
      continue;
    }
    if (response.status == 200) return std::move(response.body);
    if (response.status == 429 || response.status >= 500) {
      last_error = "HTTP " + std::to_string(response.status);
      continue;  // retryable
    }
    throw FetchError("HTTP " + std::to_string(response.status) + " for " + target);
  }
  throw FetchError("fetch failed after " + std::to_string(options_.max_attempts) +
                   " attempts: " + last_error + " (" + target + ")");
}

std::uint64_t Client::fetch_work_count(const ApiQuery& query) {
  if (query.endpoint != Endpoint::works)
    throw ValidationError("work counts are fetched from the works endpoint");
  const json j = parse_json(fetch_body(prepared(query)));
  if (!j.contains("meta") || !j["meta"].contains("count") ||
      !j["meta"]["count"].is_number_integer())
    throw FetchError("malformed response: missing meta.count");
  const auto count = j["meta"]["count"].get<std::int64_t>();
  if (count < 0) throw FetchError("malformed response: negative count");
  return static_cast<std::uint64_t>(count);
}

std::vector<GroupedCount> Client::fetch_top_authors(const ApiQuery& query) {
  if (query.endpoint != Endpoint::works)
    throw ValidationError("author groups are fetched from the works endpoint");
  if (query.group_by != "authorships.author.id")
    throw ValidationError("top-author queries must group by authorships.author.id");
  {
    bool has_concept = false, has_year = false;
    for (const auto& [key, value] : query.filters) {
      (void)value;
      if (key == "concepts.id") has_concept = true;
      if (key == "publication_year" || key == "from_publication_date") has_year = true;
    }
    if (!has_concept || !has_year)
      throw ValidationError("top-author queries need discipline and year filters");
  }

  const json j = parse_json(fetch_body(prepared(query)));
  if (!j.contains("group_by") || !j["group_by"].is_array())
    throw FetchError("malformed response: missing group_by array");
  const auto& groups = j["group_by"];
  if (groups.size() > 200)
    throw FetchError("malformed response: more than 200 groups returned");

  std::vector<GroupedCount> out;
  int unknowns = 0;
  for (const auto& g : groups) {
    std::string key = g.contains("key") && g["key"].is_string() ? g["key"].get<std::string>() : "";
    if (!g.contains("count") || !g["count"].is_number_integer() ||
        g["count"].get<std::int64_t>() < 0)
      throw FetchError("malformed response: group without a non-negative count");
    if (is_unknown_key(key)) {
      if (++unknowns > 1)
        throw FetchError("malformed response: multiple unknown-key groups");
      continue;
    }
    out.push_back({short_id(key), g["count"].get<std::uint64_t>()});
  }

  std::sort(out.begin(), out.end(), [](const GroupedCount& a, const GroupedCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.key < b.key;
  });
  if (out.size() > 199) out.resize(199);
  return out;
}

std::set<std::string> Client::fetch_author_country_set(const std::string& author_id, int year) {
  const std::string id = short_id(author_id);
  if (id.empty() || id[0] != 'A')
    throw ValidationError("author id must look like A<digits>: " + author_id);
  if (year < 1000 || year > 3000)
    throw ValidationError("implausible publication year: " + std::to_string(year));

  std::set<std::string> countries;
  std::string cursor = "*";
  // Hard page cap so a cyclic next_cursor in a broken body cannot loop.
  for (int page = 0; page < 1000 && !cursor.empty(); ++page) {
    ApiQuery query;
    query.endpoint = Endpoint::works;
    query.filter("authorships.author.id", id);
    query.filter("publication_year", std::to_string(year));
    query.select = "id,authorships";
    query.per_page = options_.listing_page_size;
    query.cursor = cursor;

    const json j = parse_json(fetch_body(prepared(query)));
    if (!j.contains("results") || !j["results"].is_array())
      throw FetchError("malformed response: missing results array");

    for (const auto& work : j["results"]) {
      if (!work.contains("authorships") || !work["authorships"].is_array()) continue;
      for (const auto& authorship : work["authorships"]) {
        // Only this author's own affiliations count, not the coauthors'.
        if (!authorship.contains("author") || !authorship["author"].contains("id")) continue;
        if (short_id(authorship["author"]["id"].get<std::string>()) != id) continue;
        if (!authorship.contains("institutions") || !authorship["institutions"].is_array())
          continue;
        for (const auto& inst : authorship["institutions"]) {
          if (!inst.contains("country_code") || !inst["country_code"].is_string()) continue;
          std::string code = inst["country_code"].get<std::string>();
          if (code.empty()) continue;  // unknown country, dropped
          std::transform(code.begin(), code.end(), code.begin(),
                         [](unsigned char c) { return std::toupper(c); });
          countries.insert(code);
        }
      }
    }

    cursor.clear();
    if (j.contains("meta") && j["meta"].contains("next_cursor") &&
        j["meta"]["next_cursor"].is_string())
      cursor = j["meta"]["next_cursor"].get<std::string>();
  }
  return countries;
}

std::string short_id(std::string_view id) {
  const std::string_view prefix = "https://openalex.org/";
  if (id.rfind(prefix, 0) == 0) id.remove_prefix(prefix.size());
  return std::string(id);
}

}  // namespace atlas::openalex
