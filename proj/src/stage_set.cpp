#include "finarg/stage_set.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "finarg/af.hpp"

namespace finarg {

namespace {

std::size_t parse_natural(std::string_view text, std::string_view context) {
  std::size_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw InputError("expected a natural number in " + std::string(context) + ", got '" +
                     std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

StageSet::StageSet() : StageSet(empty()) {}

StageSet::StageSet(std::function<bool(std::size_t)> contains,
                   std::optional<std::size_t> finite_bound, std::string description)
    : contains_(std::move(contains)), bound_(finite_bound), description_(std::move(description)) {}

StageSet StageSet::empty() {
  return StageSet([](std::size_t) { return false; }, 0, "none");
}

StageSet StageSet::all() {
  return StageSet([](std::size_t) { return true; }, std::nullopt, "all");
}

StageSet StageSet::explicit_set(std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) return empty();
  std::string desc;
  for (std::size_t m : members) desc += (desc.empty() ? "" : ",") + std::to_string(m);
  const std::size_t bound = members.back();
  auto shared = std::make_shared<const std::vector<std::size_t>>(std::move(members));
  return StageSet(
      [shared](std::size_t n) { return std::binary_search(shared->begin(), shared->end(), n); },
      bound, desc);
}

StageSet StageSet::progression(std::size_t start, std::size_t step,
                               std::optional<std::size_t> count) {
  if (step == 0) {
    if (count && *count == 0) return empty();
    return explicit_set({start});
  }
  std::optional<std::size_t> bound;
  if (count) {
    if (*count == 0) return empty();
    bound = start + step * (*count - 1);
  }
  std::string desc = "ap:" + std::to_string(start) + ":" + std::to_string(step);
  if (count) desc += ":" + std::to_string(*count);
  return StageSet(
      [=](std::size_t n) {
        if (n < start || (n - start) % step != 0) return false;
        return !bound || n <= *bound;
      },
      bound, desc);
}

StageSet StageSet::below(std::size_t k) {
  if (k == 0) return empty();
  return StageSet([k](std::size_t n) { return n < k; }, k - 1, "lt:" + std::to_string(k));
}

StageSet StageSet::parse(std::string_view literal) {
  if (literal == "none" || literal.empty()) return empty();
  if (literal == "all") return all();
  if (literal.starts_with("lt:")) return below(parse_natural(literal.substr(3), "lt:K"));
  if (literal.starts_with("ap:")) {
    const auto parts = split(literal.substr(3), ':');
    if (parts.size() < 2 || parts.size() > 3)
      throw InputError("progression literal must be ap:START:STEP[:COUNT]");
    std::optional<std::size_t> count;
    if (parts.size() == 3) count = parse_natural(parts[2], "progression count");
    return progression(parse_natural(parts[0], "progression start"),
                       parse_natural(parts[1], "progression step"), count);
  }
  std::vector<std::size_t> members;
  for (std::string_view part : split(literal, ',')) members.push_back(parse_natural(part, "stage set"));
  return explicit_set(std::move(members));
}

std::vector<std::size_t> StageSet::members_upto(std::size_t limit) const {
  std::vector<std::size_t> out;
  const std::size_t hi = bound_ ? std::min(limit, *bound_) : limit;
  for (std::size_t n = 0; n <= hi; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

EnumerationSchedule::EnumerationSchedule()
    : entry_([](std::size_t) { return std::optional<std::size_t>{}; }), description_("none") {}

EnumerationSchedule::EnumerationSchedule(
    std::function<std::optional<std::size_t>(std::size_t)> entry, std::string description)
    : entry_(std::move(entry)), description_(std::move(description)) {}

EnumerationSchedule EnumerationSchedule::explicit_entries(
    std::vector<std::pair<std::size_t, std::size_t>> entries) {
  std::map<std::size_t, std::size_t> table;
  std::string desc;
  for (auto [n, stage] : entries) {
    if (stage == 0) throw InputError("enumeration stages start at 1");
    if (!table.emplace(n, stage).second)
      throw InputError("element " + std::to_string(n) + " enumerated twice");
  }
  for (auto [n, stage] : table)
    desc += (desc.empty() ? "" : ",") + std::to_string(n) + ":" + std::to_string(stage);
  if (desc.empty()) desc = "none";
  auto shared = std::make_shared<const std::map<std::size_t, std::size_t>>(std::move(table));
  return EnumerationSchedule(
      [shared](std::size_t n) -> std::optional<std::size_t> {
        auto it = shared->find(n);
        if (it == shared->end()) return std::nullopt;
        return it->second;
      },
      desc);
}

EnumerationSchedule EnumerationSchedule::parse(std::string_view literal) {
  if (literal == "none" || literal.empty()) return EnumerationSchedule();
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::string_view part : split(literal, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos)
      throw InputError("enumeration entries are written n:stage, got '" + std::string(part) + "'");
    entries.emplace_back(parse_natural(part.substr(0, colon), "enumeration element"),
                         parse_natural(part.substr(colon + 1), "enumeration stage"));
  }
  return explicit_entries(std::move(entries));
}

bool EnumerationSchedule::enumerated_by(std::size_t n, std::size_t stage) const {
  const auto s = entry_(n);
  return s && *s <= stage;
}

}  // namespace finarg
