// Copyright 2026 The Descend Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "descend/timemap.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <map>

#include "descend/errors.hpp"

namespace descend {
namespace {

constexpr std::array<std::string_view, 12> kMonths{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                   "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr std::array<std::string_view, 7> kWeekdays{"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_token_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '!': case '#': case '$': case '%': case '&': case '\'': case '*': case '+':
    case '-': case '.': case '^': case '_': case '`': case '|': case '~':
      return true;
    default:
      return false;
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class LinkReader {
 public:
  explicit LinkReader(std::string_view body) : s_(body) {}

  struct Link {
    std::size_t offset = 0;
    std::string target;
    std::map<std::string, std::string> params;  // lowercase name -> first value
  };

  std::vector<Link> read_all() {
    std::vector<Link> links;
    skip_ws();
    while (pos_ < s_.size()) {
      links.push_back(read_link());
      skip_ws();
      if (pos_ == s_.size()) break;
      if (s_[pos_] != ',') throw TimeMapParseError("expected ',' between link-values", pos_);
      ++pos_;
      skip_ws();
    }
    return links;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && is_ws(s_[pos_])) ++pos_;
  }

  Link read_link() {
    Link link;
    link.offset = pos_;
    if (s_[pos_] != '<') throw TimeMapParseError("expected '<' to open a link target", pos_);
    const auto close = s_.find('>', pos_ + 1);
    if (close == std::string_view::npos) throw TimeMapParseError("unterminated link target", pos_);
    link.target = std::string(s_.substr(pos_ + 1, close - pos_ - 1));
    if (link.target.find_first_of("<\n\r") != std::string::npos) {
      throw TimeMapParseError("unterminated link target", pos_);
    }
    pos_ = close + 1;
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ';') break;
      ++pos_;
      skip_ws();
      const std::size_t name_start = pos_;
      while (pos_ < s_.size() && is_token_char(s_[pos_])) ++pos_;
      if (pos_ == name_start) throw TimeMapParseError("expected a parameter name", pos_);
      std::string name = lower(s_.substr(name_start, pos_ - name_start));
      skip_ws();
      std::string value;
      if (pos_ < s_.size() && s_[pos_] == '=') {
        ++pos_;
        skip_ws();
        value = read_value();
      }
      link.params.emplace(std::move(name), std::move(value));
    }
    return link;
  }

  std::string read_value() {
    if (pos_ < s_.size() && s_[pos_] == '"') {
      const std::size_t open = pos_++;
      std::string out;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
        out += s_[pos_++];
      }
      if (pos_ >= s_.size()) throw TimeMapParseError("unterminated quoted string", open);
      ++pos_;
      return out;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_token_char(s_[pos_])) ++pos_;
    if (pos_ == start) throw TimeMapParseError("expected a parameter value", pos_);
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool rel_has_memento(std::string_view rel) {
  std::size_t pos = 0;
  while (pos < rel.size()) {
    while (pos < rel.size() && is_ws(rel[pos])) ++pos;
    std::size_t end = pos;
    while (end < rel.size() && !is_ws(rel[end])) ++end;
    if (end > pos && lower(rel.substr(pos, end - pos)) == "memento") return true;
    pos = end;
  }
  return false;
}

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  out = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    out = out * 10 + (s[i] - '0');
  }
  return true;
}

}  // namespace

std::optional<std::chrono::sys_seconds> parse_http_date(std::string_view t) {
  using namespace std::chrono;
  // "Sun, 06 Nov 1994 08:49:37 GMT"
  if (t.size() != 29 || t[3] != ',' || t[4] != ' ' || t[7] != ' ' || t[11] != ' ' || t[16] != ' ' ||
      t[19] != ':' || t[22] != ':' || t.substr(25) != " GMT") {
    return std::nullopt;
  }
  bool weekday_ok = false;
  for (auto w : kWeekdays) weekday_ok |= t.substr(0, 3) == w;
  int month = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (t.substr(8, 3) == kMonths[i]) month = static_cast<int>(i) + 1;
  }
  int d = 0, y = 0, hh = 0, mm = 0, ss = 0;
  if (!weekday_ok || !month || !read_int(t, 5, 2, d) || !read_int(t, 12, 4, y) || !read_int(t, 17, 2, hh) ||
      !read_int(t, 20, 2, mm) || !read_int(t, 23, 2, ss)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, std::chrono::month{static_cast<unsigned>(month)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_http_date(std::chrono::sys_seconds t) {
  using namespace std::chrono;
  const auto days = floor<std::chrono::days>(t);
  const year_month_day ymd{days};
  const hh_mm_ss hms{t - days};
  const weekday wd{days};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s, %02u %s %04d %02d:%02d:%02d GMT",
                std::string(kWeekdays[wd.c_encoding()]).c_str(), static_cast<unsigned>(ymd.day()),
                std::string(kMonths[static_cast<unsigned>(ymd.month()) - 1]).c_str(),
                static_cast<int>(ymd.year()), static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()));
  return buf;
}

ParsedTimeMap parse_timemap(std::string_view body, const UriR& original) {
  ParsedTimeMap out;
  out.timemap.original = original;
  for (auto& link : LinkReader(body).read_all()) {
    auto rel = link.params.find("rel");
    if (rel == link.params.end() || !rel_has_memento(rel->second)) continue;
    auto dt = link.params.find("datetime");
    if (dt == link.params.end()) {
      out.warnings.push_back({link.offset, "memento <" + link.target + "> has no datetime; skipped"});
      continue;
    }
    auto when = parse_http_date(dt->second);
    if (!when) {
      out.warnings.push_back({link.offset, "memento <" + link.target + "> has unparseable datetime '" +
                                               dt->second + "'; skipped"});
      continue;
    }
    try {
      canonicalize(link.target);
    } catch (const UriParseError&) {
      out.warnings.push_back({link.offset, "memento <" + link.target + "> is not an absolute URI; skipped"});
      continue;
    }
    out.timemap.mementos.push_back(Memento{std::move(link.target), *when});
  }
  return out;
}

std::string serialize_timemap(const TimeMap& timemap) {
  std::string out = "<" + timemap.original.raw() + ">; rel=\"original\"";
  const auto n = timemap.mementos.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = timemap.mementos[i];
    std::string rel = "memento";
    if (n == 1) {
      rel = "first last memento";
    } else if (i == 0) {
      rel = "first memento";
    } else if (i + 1 == n) {
      rel = "last memento";
    }
    out += ",\n<" + m.uri + ">; rel=\"" + rel + "\"; datetime=\"" + format_http_date(m.datetime) + "\"";
  }
  out += "\n";
  return out;
}

}  // namespace descend
