#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eventlog.hpp"
#include "homemap.hpp"
#include "perception.hpp"
#include "plan.hpp"
#include "simtime.hpp"

namespace rsent {

// Tuning for the decision core.  `omniscient` runs the trigger logic against
// perfect, everywhere-at-once observation: no patrol, no docking — used to
// compare against the reference delivery computation.
struct EngineParams {
  int max_gap = 5;        // unobserved minutes a dwell streak survives
  int seek_timeout = 10;  // minutes a search for a person may take
  int privacy_lead = 15;  // leave privacy this many minutes before next window
  bool omniscient = false;
};

// What the decision core asks the robot body to do.
struct Command {
  enum class Kind { Goto, TakeSnapshot, Speak, Dock, Idle };
  Kind kind = Kind::Idle;
  std::string location;                 // Goto
  std::string reminder;                 // Speak
  std::vector<std::string> recipients;  // Speak
  std::string text;                     // Speak
};

// What the body (or the household) tells the decision core.
struct EngineEvent {
  enum class Kind {
    Tick,            // scheduling prompt, once per free minute
    Arrived,         // reached `location`
    NavFailed,       // could not reach `location` (`reason`: blocked|unreachable)
    SnapshotResult,  // perception output for one room
    Checkin,         // `member` pressed the check-reminders button
    MessagePost,     // `member` left a message for `to`
    PrivacyRequest,  // privacy-mode button
    DockResult,      // docking attempt finished (`ok`)
    Battery          // battery level report
  };
  enum class PrivacyReq { OnForMinutes, OnRestOfDay, Off };

  Kind kind = Kind::Tick;
  SimTime time;
  std::string location;
  std::string reason;
  SnapshotRecord snapshot;
  std::string member;
  std::string to;
  std::string text;
  PrivacyReq privacy = PrivacyReq::Off;
  int privacy_minutes = 0;
  bool ok = false;
  int battery_level = 0;
};

// Streak accounting for one (reminder, room) pair.  A streak starts on the
// first observed-true minute and gains one credit per later observed-true
// minute; it survives short unobserved gaps (frozen), dies on observed-false
// or a gap longer than max_gap.  Armed once credits reach dwell_min, i.e.
// dwell_min minutes after the streak anchor under continuous observation.
struct DwellTracker {
  long anchor = -1;     // abs minute the current streak started, -1 = idle
  long last_true = -1;  // abs minute of the latest observed-true
  int credit = 0;

  bool idle() const { return anchor < 0; }
  bool armed(int dwell_min) const { return anchor >= 0 && credit >= dwell_min; }
};

enum class Observation { True, False, Unobserved };

DwellTracker update_dwell(DwellTracker t, Observation obs, long now_abs, int max_gap);

struct Message {
  std::string from;
  std::string to;
  std::string text;
  SimTime posted;
  bool read = false;
};

// The reminder brain.  Value-semantic: copy it, feed it events, compare.
// It never touches ground truth — everything it knows arrived as an event.
class Engine {
 public:
  struct Result {
    std::vector<Command> commands;
    std::vector<LogRecord> logs;
  };

  Engine(const Plan& plan, const HomeMap& map, const EngineParams& params);

  // Minute prologue: advances the clock and applies privacy transitions
  // (manual expiry, automatic enter/leave).  Call once per minute before any
  // of that minute's events; extra calls are no-ops.
  std::vector<LogRecord> begin_minute(const SimTime& t);

  Result handle_event(const EngineEvent& ev);

  // Where the robot should go next, as a pure query (no state change):
  // the watched room observed least recently, ties broken by earliest window
  // end, then reminder id, then room name.  Docks when nothing is active.
  Command schedule_next(const SimTime& t) const;

  // Message board (screen-only interaction; not reachable from traces).
  Result post_message(const std::string& from, const std::string& to, const std::string& text,
                      const SimTime& t);
  std::pair<Result, std::vector<Message>> check_messages(const std::string& member,
                                                         const SimTime& t);
  bool has_unread(const std::string& member) const;

  // Body was carried back to the dock by a person after going offline.
  void handle_rescue(const SimTime& t);

  bool privacy_on() const { return privacy_on_; }
  bool seeking() const { return seeking_; }
  const std::string& position() const { return position_; }
  bool docked() const { return docked_; }

  struct DeliveryEntry {
    long abs;
    std::string mode;
  };
  const std::map<std::string, std::vector<DeliveryEntry>>& ledger() const { return ledger_; }

 private:
  const Plan* plan_;
  const HomeMap* map_;
  EngineParams params_;

  long now_abs_ = 0;
  long minute_begun_ = -1;
  bool privacy_on_ = false;
  long manual_until_ = -1;  // abs minute manual privacy expires, -1 = none

  std::vector<const ReminderSpec*> by_id_;       // reminders sorted by id
  std::map<std::pair<std::string, std::string>, DwellTracker> trackers_;
  std::map<std::string, std::vector<DeliveryEntry>> ledger_;
  std::map<std::string, long> last_observed_;  // room -> abs minute, -1 never
  std::vector<Message> board_;

  // Robot-body beliefs.
  std::string position_;
  bool docked_ = true;
  bool traveling_ = false;
  std::string travel_target_;
  enum class Intent { None, Patrol, Dock, Seek } intent_ = Intent::None;

  // Active person search.
  bool seeking_ = false;
  std::string seek_reminder_;
  std::string seek_target_;
  std::deque<std::string> seek_queue_;
  std::string seek_awaiting_;  // room whose snapshot the search expects next
  long seek_deadline_ = 0;
  std::deque<std::string> pending_seeks_;  // reminders queued behind the active search

  SimTime now() const { return SimTime::from_abs(now_abs_); }
  int count_on_day(const std::string& rid, int day) const;
  long last_delivery_abs(const std::string& rid) const;
  // Empty when deliverable; otherwise the reason to log.
  std::optional<std::string> gate_check(const ReminderSpec& r, const SimTime& t,
                                        bool privacy_exempt) const;
  bool any_pending(const SimTime& t) const;
  std::optional<long> next_window_start(long after_abs) const;
  bool auto_privacy_level(const SimTime& t) const;

  void log(Result& out, const SimTime& t, std::string kind,
           std::vector<std::pair<std::string, std::string>> fields);
  void deliver(Result& out, const ReminderSpec& r, const std::vector<std::string>& to,
               const std::string& mode, const std::string& loc, const SimTime& t);
  void attempt(Result& out, const ReminderSpec& r, const Scene& seen, const SimTime& t);
  void start_seek(Result& out, const ReminderSpec& r, const std::string& from_loc,
                  const SimTime& t);
  void seek_step(Result& out, const SimTime& t);
  void end_seek(Result& out, const SimTime& t, const char* reason);
  void launch_pending_seek(Result& out, const SimTime& t);
  void abort_seek_for_privacy(Result& out, const SimTime& t);

  void on_tick(Result& out, const SimTime& t);
  void on_arrived(Result& out, const EngineEvent& ev);
  void on_nav_failed(Result& out, const EngineEvent& ev);
  void on_snapshot(Result& out, const EngineEvent& ev);
  void on_checkin(Result& out, const EngineEvent& ev);
  void on_privacy_request(Result& out, const EngineEvent& ev);
};

// Convenience pure wrapper: same transition, fresh value.
std::pair<Engine, Engine::Result> step_engine(Engine e, const EngineEvent& ev);

}  // namespace rsent
