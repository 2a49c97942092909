#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqfair/contingency.h"

namespace eqfair {

// Samples whose group_key[i] holds the value of attribute_names[i].
struct SampleSet {
  std::vector<std::string> attribute_names;
  std::vector<LabeledSample> samples;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

// How sensitive groups are formed from attributes.
class GroupingSpec {
 public:
  enum class Mode { kSingle, kIntersection };

  static GroupingSpec Single(std::string attribute);
  // Requires at least two distinct attribute names.
  static GroupingSpec Intersection(std::vector<std::string> attributes);

  Mode mode() const { return mode_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

  // Groups with fewer members are dropped (or only reported when
  // drop_small_groups is false).
  std::int64_t min_group_size = 0;
  bool drop_small_groups = true;

  // "sex" or "sex × race".
  std::string Describe() const;
  // File-system friendly form: "sex" or "sex_x_race".
  std::string Slug() const;

  friend bool operator==(const GroupingSpec&, const GroupingSpec&) = default;

 private:
  GroupingSpec(Mode mode, std::vector<std::string> attributes)
      : mode_(mode), attributes_(std::move(attributes)) {}

  Mode mode_;
  std::vector<std::string> attributes_;
};

struct GroupSize {
  std::string name;
  std::int64_t size = 0;

  friend bool operator==(const GroupSize&, const GroupSize&) = default;
};

struct ExpandedGroups {
  // Each sample carries a single composite group name.
  std::vector<LabeledSample> samples;
  // Groups removed for falling below min_group_size.
  std::vector<GroupSize> dropped;
  // Groups below min_group_size that were kept (drop_small_groups == false).
  std::vector<GroupSize> sparse;
};

ExpandedGroups ExpandGroups(const SampleSet& data, const GroupingSpec& spec);

// One single-attribute spec per attribute, then one intersection over all
// of them when requested (and there are at least two).
std::vector<GroupingSpec> AuditPlan(const std::vector<std::string>& attributes,
                                    bool include_intersections);

}  // namespace eqfair
