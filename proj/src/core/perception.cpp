#include "perception.hpp"

#include <algorithm>
#include <map>

namespace rsent {

SensingQuery make_query(const std::vector<PredicatePtr>& predicates, bool seek_presence) {
  SensingQuery q;
  q.predicates = predicates;
  q.seek_presence = seek_presence;
  PredicateRefs refs;
  for (const auto& p : q.predicates)
    if (p) collect_refs(*p, refs);
  q.object_tags = refs.object_tags;
  return q;
}

Stage1Summary stage1_scan(const Scene& ground, const SensingQuery& query) {
  Stage1Summary s;
  s.person_count = static_cast<int>(ground.persons.size());
  for (const auto& tag : query.object_tags)
    if (ground.objects.count(tag)) s.seen_objects.insert(tag);
  return s;
}

bool stage1_pass(const SensingQuery& query, const Stage1Summary& summary) {
  if (query.seek_presence && summary.person_count > 0) return true;
  for (const auto& p : query.predicates)
    if (p && stage1_eval(*p, summary.person_count, summary.seen_objects) != Tri::False)
      return true;
  return false;
}

Scene perceive(const Scene& ground, const ErrorModel& em, const Roster& roster,
               const ReferencedTags& referenced, RandomStream& rng) {
  Scene out;
  out.location = ground.location;

  // Identity + activities, person-major in id order.  A swap relabels the
  // person as a uniformly chosen *other* family member; two people resolving
  // to the same identity merge into one perceived person.
  std::map<std::string, std::set<std::string>> by_identity;
  for (const auto& p : ground.persons) {
    std::string identity = p.id;
    if (roster.size() >= 2 && rng.bernoulli(em.p_person_swap)) {
      uint64_t pick = rng.below(roster.size() - 1);
      for (const auto& m : roster) {
        if (m.id == p.id) continue;
        if (pick == 0) {
          identity = m.id;
          break;
        }
        --pick;
      }
    }

    std::set<std::string> acts;
    for (const auto& tag : p.activities)
      if (!rng.bernoulli(em.p_activity_fn)) acts.insert(tag);
    for (const auto& tag : referenced.activities)
      if (!p.activities.count(tag) && rng.bernoulli(em.p_activity_fp)) acts.insert(tag);

    auto& slot = by_identity[identity];
    slot.insert(acts.begin(), acts.end());
  }
  for (auto& [id, acts] : by_identity) out.persons.push_back({id, std::move(acts)});

  for (const auto& tag : referenced.objects) {
    bool really_there = ground.objects.count(tag) > 0;
    if (really_there != rng.bernoulli(em.p_object_flip)) out.objects.insert(tag);
  }
  return out;
}

SnapshotRecord take_snapshot(const Scene& ground, const SimTime& when, const SensingQuery& query,
                             const ErrorModel& em, const Roster& roster,
                             const ReferencedTags& referenced, RandomStream& rng,
                             bool force_stage2) {
  SnapshotRecord rec;
  rec.time = when;
  rec.location = ground.location;
  rec.stage1 = stage1_scan(ground, query);
  if (force_stage2 || stage1_pass(query, rec.stage1)) {
    rec.stage2_ran = true;
    rec.perceived = perceive(ground, em, roster, referenced, rng);
  }
  return rec;
}

}  // namespace rsent
