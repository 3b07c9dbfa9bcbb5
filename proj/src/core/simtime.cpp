#include "simtime.hpp"

#include <cstdio>

namespace rsent {

std::string format_sim_time(const SimTime& t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "d%d:%02d:%02d", t.day, t.minute / 60, t.minute % 60);
  return buf;
}

std::optional<int> parse_clock(const std::string& text) {
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  for (int i : {0, 1, 3, 4})
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  int h = (text[0] - '0') * 10 + (text[1] - '0');
  int m = (text[3] - '0') * 10 + (text[4] - '0');
  if (m > 59) return std::nullopt;
  if (h > 24 || (h == 24 && m != 0)) return std::nullopt;
  return h * 60 + m;
}

std::string format_clock(int minute_of_day) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", minute_of_day / 60, minute_of_day % 60);
  return buf;
}

}  // namespace rsent
