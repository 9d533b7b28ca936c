#include "covcomp/framesim.hpp"

#include <cmath>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "number_text.hpp"

namespace covcomp {

std::string to_string(Phase p) {
  switch (p) {
  case Phase::dispatch:
    return "dispatch";
  case Phase::compute:
    return "compute";
  case Phase::result_return:
    return "return";
  }
  return "dispatch";
}

namespace {

struct Event {
  double time;
  std::size_t seq;
  std::size_t member;
  Phase finished;

  bool operator>(const Event &o) const {
    if (time != o.time)
      return time > o.time;
    return seq > o.seq;
  }
};

} // namespace

FrameSchedule simulate_frame(std::size_t master, std::span<const MemberLink> members,
                             std::span<const double> split, double b0_bits, double b1_bits,
                             double tasks_per_frame) {
  if (!(tasks_per_frame > 0.0))
    throw std::invalid_argument("simulate_frame: T must be positive");
  if (members.size() != split.size())
    throw std::invalid_argument("simulate_frame: split size does not match members");
  double total = 0.0;
  for (double e : split) {
    if (e < 0.0)
      throw std::invalid_argument("simulate_frame: negative task share");
    total += e;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("simulate_frame: task shares must sum to 1");

  FrameSchedule sched;
  sched.master = master;
  sched.members.resize(members.size());

  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  std::size_t seq = 0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    auto &ms = sched.members[k];
    ms.node = members[k].node;
    ms.share = split[k];
    const double tasks = split[k] * tasks_per_frame;
    ms.dispatch = {0.0, members[k].rate.transfer_time(tasks * b0_bits)};
    queue.push({ms.dispatch.end, seq++, k, Phase::dispatch});
  }

  while (!queue.empty()) {
    const Event ev = queue.top();
    queue.pop();
    auto &ms = sched.members[ev.member];
    const auto &link = members[ev.member];
    const double tasks = ms.share * tasks_per_frame;
    switch (ev.finished) {
    case Phase::dispatch:
      sched.events.push_back({ms.node, Phase::dispatch, ms.dispatch.start, ms.dispatch.end});
      ms.compute = {ev.time, ev.time + tasks / link.gamma};
      queue.push({ms.compute.end, seq++, ev.member, Phase::compute});
      break;
    case Phase::compute:
      sched.events.push_back({ms.node, Phase::compute, ms.compute.start, ms.compute.end});
      ms.result_return = {ev.time, ev.time + link.rate.transfer_time(tasks * b1_bits)};
      queue.push({ms.result_return.end, seq++, ev.member, Phase::result_return});
      break;
    case Phase::result_return:
      sched.events.push_back(
          {ms.node, Phase::result_return, ms.result_return.start, ms.result_return.end});
      sched.completion = ev.time;
      break;
    }
  }
  return sched;
}

FrameSchedule simulate_cluster(const Scenario &scenario, std::size_t master,
                               std::span<const std::size_t> members,
                               std::span<const double> split, double tasks_per_frame) {
  std::vector<MemberLink> links;
  links.reserve(members.size());
  for (auto j : members) {
    if (j >= scenario.size())
      throw std::invalid_argument("simulate_cluster: unknown node");
    const LinkRate rate =
        j == master ? LinkRate::infinite()
                    : link_rate(scenario.distance(master, j), scenario.radio);
    links.push_back({j, rate, scenario.nodes[j].gamma});
  }
  return simulate_frame(master, links, split, scenario.tasks.b0_bits, scenario.tasks.b1_bits,
                        tasks_per_frame);
}

double throughput_check(const FrameSchedule &schedule, double tasks_per_frame) {
  return tasks_per_frame / schedule.completion;
}

void write_schedule_csv(std::ostream &out, std::span<const FrameSchedule> schedules) {
  using detail::num;
  out << "node,phase,start_s,end_s\n";
  for (const auto &s : schedules)
    for (const auto &e : s.events)
      out << e.node + 1 << ',' << to_string(e.phase) << ',' << num(e.start) << ',' << num(e.end)
          << '\n';
}

} // namespace covcomp
