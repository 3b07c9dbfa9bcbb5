#pragma once

#include <set>
#include <string>
#include <vector>

#include "domain.hpp"
#include "predicate.hpp"
#include "rng.hpp"
#include "simtime.hpp"

namespace rsent {

// Chances of each way a scene interpretation can go wrong.  All zero means
// perception reproduces ground truth exactly.
struct ErrorModel {
  double p_person_swap = 0.0;   // person identified as another family member
  double p_activity_fp = 0.0;   // plan-relevant activity reported but absent
  double p_activity_fn = 0.0;   // real activity missed
  double p_object_flip = 0.0;   // plan-relevant object presence inverted

  bool is_zero() const {
    return p_person_swap == 0.0 && p_activity_fp == 0.0 && p_activity_fn == 0.0 &&
           p_object_flip == 0.0;
  }
};

// What a snapshot is being taken for: the conditions currently worth
// checking here plus whether a seek needs to identify people regardless.
struct SensingQuery {
  std::vector<PredicatePtr> predicates;
  std::set<std::string> object_tags;  // object tags those predicates mention
  bool seek_presence = false;

  bool empty() const { return predicates.empty() && !seek_presence; }
};

SensingQuery make_query(const std::vector<PredicatePtr>& predicates, bool seek_presence);

// Output of the cheap first pass: an exact body count and which of the
// queried object tags are in view.  No identities, no activities.
struct Stage1Summary {
  int person_count = 0;
  std::set<std::string> seen_objects;
};

Stage1Summary stage1_scan(const Scene& ground, const SensingQuery& query);

// Should the expensive full interpretation run?  Yes when a seek needs to
// identify somebody, or when some queried condition is still satisfiable
// given the first-pass facts.
bool stage1_pass(const SensingQuery& query, const Stage1Summary& summary);

// Tags mentioned anywhere in the plan.  Perception only reports on these:
// an activity nobody asked about cannot be false-positively "seen", and
// object flips only apply to tags a condition could read.
struct ReferencedTags {
  std::set<std::string> activities;
  std::set<std::string> objects;
};

// Full interpretation of one room.  Draw order is fixed (people by id, tags
// sorted) so identical seeds give identical output.  Swaps merge colliding
// identities; perceived objects are restricted to the referenced tags.
Scene perceive(const Scene& ground, const ErrorModel& em, const Roster& roster,
               const ReferencedTags& referenced, RandomStream& rng);

struct SnapshotRecord {
  SimTime time;
  std::string location;
  Stage1Summary stage1;
  bool stage2_ran = false;
  Scene perceived;  // meaningful only when stage2_ran
};

SnapshotRecord take_snapshot(const Scene& ground, const SimTime& when, const SensingQuery& query,
                             const ErrorModel& em, const Roster& roster,
                             const ReferencedTags& referenced, RandomStream& rng,
                             bool force_stage2);

}  // namespace rsent
