#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace rsent {

enum class Role { Adult, Child };

struct FamilyMember {
  std::string id;
  Role role = Role::Adult;
};

using Roster = std::vector<FamilyMember>;

inline const FamilyMember* find_member(const Roster& roster, const std::string& id) {
  for (const auto& m : roster)
    if (m.id == id) return &m;
  return nullptr;
}

// One person as seen (or as actually present) in a room: who they are and
// what activities they are engaged in.
struct ScenePerson {
  std::string id;
  std::set<std::string> activities;

  friend bool operator==(const ScenePerson& a, const ScenePerson& b) {
    return a.id == b.id && a.activities == b.activities;
  }
};

// The contents of one location at one instant.  Used both for ground truth
// (what is really there) and for perception output (what the robot believes
// is there).  `persons` is kept sorted by id with unique ids.
struct Scene {
  std::string location;
  std::vector<ScenePerson> persons;
  std::set<std::string> objects;

  const ScenePerson* find_person(const std::string& id) const {
    for (const auto& p : persons)
      if (p.id == id) return &p;
    return nullptr;
  }

  void sort_persons() {
    std::sort(persons.begin(), persons.end(),
              [](const ScenePerson& a, const ScenePerson& b) { return a.id < b.id; });
  }

  friend bool operator==(const Scene& a, const Scene& b) {
    return a.location == b.location && a.persons == b.persons && a.objects == b.objects;
  }
};

}  // namespace rsent
