#include "eqfair/groups.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "eqfair/error.h"

namespace eqfair {

GroupingSpec GroupingSpec::Single(std::string attribute) {
  if (attribute.empty()) throw InvalidInput("empty attribute name");
  return GroupingSpec(Mode::kSingle, {std::move(attribute)});
}

GroupingSpec GroupingSpec::Intersection(std::vector<std::string> attributes) {
  std::set<std::string> distinct(attributes.begin(), attributes.end());
  if (attributes.size() < 2 || distinct.size() != attributes.size()) {
    throw InvalidInput("an intersection needs at least two distinct attributes");
  }
  for (const auto& a : attributes) {
    if (a.empty()) throw InvalidInput("empty attribute name");
  }
  return GroupingSpec(Mode::kIntersection, std::move(attributes));
}

std::string GroupingSpec::Describe() const { return fmt::format("{}", fmt::join(attributes_, " × ")); }

std::string GroupingSpec::Slug() const {
  std::string out;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (i) out += "_x_";
    for (char c : attributes_[i]) {
      const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
      out += safe ? c : '_';
    }
  }
  return out;
}

ExpandedGroups ExpandGroups(const SampleSet& data, const GroupingSpec& spec) {
  std::vector<std::size_t> columns;
  for (const auto& attribute : spec.attributes()) {
    auto it = std::find(data.attribute_names.begin(), data.attribute_names.end(), attribute);
    if (it == data.attribute_names.end()) {
      throw InvalidInput(fmt::format("unknown attribute '{}'", attribute));
    }
    columns.push_back(static_cast<std::size_t>(it - data.attribute_names.begin()));
  }

  std::vector<LabeledSample> projected;
  projected.reserve(data.samples.size());
  std::vector<std::string> order;
  std::unordered_map<std::string, std::int64_t> sizes;
  for (std::size_t s = 0; s < data.samples.size(); ++s) {
    const auto& sample = data.samples[s];
    if (sample.group_key.size() != data.attribute_names.size()) {
      throw InvalidInput(fmt::format("sample {} has {} attribute values, expected {}", s,
                                     sample.group_key.size(), data.attribute_names.size()));
    }
    std::vector<std::string> key;
    for (auto c : columns) key.push_back(sample.group_key[c]);
    auto name = JoinGroupKey(key);
    if (sizes[name]++ == 0) order.push_back(name);
    projected.push_back({{std::move(name)}, sample.predicted, sample.actual});
  }

  ExpandedGroups out;
  std::set<std::string> removed;
  for (const auto& name : order) {
    const auto size = sizes[name];
    if (size >= spec.min_group_size) continue;
    if (spec.drop_small_groups) {
      out.dropped.push_back({name, size});
      removed.insert(name);
    } else {
      out.sparse.push_back({name, size});
    }
  }
  for (auto& sample : projected) {
    if (!removed.count(sample.group_key.front())) out.samples.push_back(std::move(sample));
  }
  return out;
}

std::vector<GroupingSpec> AuditPlan(const std::vector<std::string>& attributes,
                                    bool include_intersections) {
  if (attributes.empty()) throw InvalidInput("audit plan needs at least one attribute");
  std::vector<GroupingSpec> plan;
  for (const auto& a : attributes) plan.push_back(GroupingSpec::Single(a));
  if (include_intersections && attributes.size() >= 2) {
    plan.push_back(GroupingSpec::Intersection(attributes));
  }
  return plan;
}

}  // namespace eqfair
