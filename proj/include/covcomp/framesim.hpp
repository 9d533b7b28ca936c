#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "covcomp/clustering.hpp"
#include "covcomp/linkmodel.hpp"

namespace covcomp {

enum class Phase { dispatch, compute, result_return };

std::string to_string(Phase p);

struct PhaseSpan {
  double start = 0.0;
  double end = 0.0;
};

/// Link and speed of one cluster member as seen from its master.
struct MemberLink {
  std::size_t node = 0;
  LinkRate rate = LinkRate::infinite(); ///< infinite for the master itself
  double gamma = 1.0;
};

struct MemberSchedule {
  std::size_t node = 0;
  double share = 0.0;
  PhaseSpan dispatch;
  PhaseSpan compute;
  PhaseSpan result_return;
};

struct PhaseEvent {
  std::size_t node = 0;
  Phase phase = Phase::dispatch;
  double start = 0.0;
  double end = 0.0;
};

/// One frame of a single cluster: every member receives its input over its
/// own channel starting at t = 0, computes once all input has arrived, and
/// then returns its output.
struct FrameSchedule {
  std::size_t master = 0;
  std::vector<MemberSchedule> members;
  std::vector<PhaseEvent> events; ///< in completion order
  double completion = 0.0;        ///< last return completion
};

/// Event-driven walk of the dispatch/compute/return phases for T tasks.
/// Throws std::invalid_argument if T <= 0 or the split does not sum to 1.
FrameSchedule simulate_frame(std::size_t master, std::span<const MemberLink> members,
                             std::span<const double> split, double b0_bits, double b1_bits,
                             double tasks_per_frame);

/// Convenience wrapper pulling links and speeds from a scenario.
FrameSchedule simulate_cluster(const Scenario &scenario, std::size_t master,
                               std::span<const std::size_t> members,
                               std::span<const double> split, double tasks_per_frame);

/// T / completion time, tasks/second.
double throughput_check(const FrameSchedule &schedule, double tasks_per_frame);

/// CSV rows `node,phase,start_s,end_s` with 1-based node ids.
void write_schedule_csv(std::ostream &out, std::span<const FrameSchedule> schedules);

} // namespace covcomp
