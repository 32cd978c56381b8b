#pragma once

#include "exsim/order_book.hpp"
#include "exsim/rng.hpp"
#include "exsim/types.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace exsim {

// ---------------------------------------------------------------------------
// Message payloads
// ---------------------------------------------------------------------------

struct WakeupMsg {
    std::int64_t tag = 0;
};

struct NewOrderMsg {
    Order order;
};

struct CancelMsg {
    VenueId venue_id = 0;
    OrderId order_id = 0;
};

/// Market maker batch: cancel stale quotes and post a fresh pair atomically.
struct RequoteMsg {
    std::vector<OrderId> cancel_ids;
    std::vector<Order> orders;
};

struct SnapshotReqMsg {
    AgentId requester = -1;
};

struct SnapshotReplyMsg {
    VenueId venue_id = 0;
    BookSnapshot snap;
};

/// Exchange-side state capture for the execution environment; processed at
/// the exchange so the captured view is exactly the book at capture time.
struct CaptureMsg {
    std::int64_t step = 0;
};

struct ExecReportMsg {
    Fill fill;
    bool is_maker = false;
};

using Payload = std::variant<WakeupMsg, NewOrderMsg, CancelMsg, RequoteMsg, SnapshotReqMsg,
                             SnapshotReplyMsg, CaptureMsg, ExecReportMsg>;

struct Event {
    SimTime deliver_at = 0;
    std::uint64_t seq = 0; // FIFO tiebreaker among equal deliver_at
    AgentId recipient = -1;
    Payload payload;
};

using EventHandle = std::uint64_t;

// ---------------------------------------------------------------------------
// Latency model
// ---------------------------------------------------------------------------

/// One-way message latency per (agent, venue) pair. Deterministic constant by
/// default; a jitter hook exists but default scenarios run with zero jitter.
class LatencyModel {
public:
    explicit LatencyModel(SimTime default_one_way_ns = millis_ns(50))
        : default_ns_(default_one_way_ns) {}

    void set_default(SimTime ns) { default_ns_ = ns; }
    void set_pair(AgentId agent, AgentId peer, SimTime ns) { overrides_[{agent, peer}] = ns; }
    void set_jitter(SimTime max_jitter_ns) { jitter_ns_ = max_jitter_ns; }

    SimTime one_way_ns(AgentId from, AgentId to, RngStream* jitter_rng = nullptr) const {
        SimTime base = default_ns_;
        auto it = overrides_.find({from, to});
        if (it != overrides_.end()) base = it->second;
        if (jitter_ns_ > 0 && jitter_rng != nullptr)
            base += jitter_rng->uniform_int(0, jitter_ns_);
        return base;
    }

private:
    SimTime default_ns_;
    SimTime jitter_ns_ = 0;
    std::map<std::pair<AgentId, AgentId>, SimTime> overrides_;
};

// ---------------------------------------------------------------------------
// Kernel
// ---------------------------------------------------------------------------

class Kernel;

class Agent {
public:
    virtual ~Agent() = default;
    virtual void on_event(Kernel& kernel, const Event& event) = 0;
    AgentId id() const { return id_; }

private:
    friend class Kernel;
    AgentId id_ = -1;
};

/// Deterministic single-threaded discrete-event scheduler. Events with equal
/// deliver_at are processed in ascending seq order.
class Kernel {
public:
    explicit Kernel(std::uint64_t master_seed = 0)
        : master_seed_(master_seed), jitter_rng_(master_seed, stream_tag::kLatencyJitter) {}

    AgentId register_agent(Agent* agent) {
        const AgentId id = static_cast<AgentId>(agents_.size());
        agent->id_ = id;
        agents_.push_back(agent);
        return id;
    }

    EventHandle schedule(SimTime deliver_at, AgentId recipient, Payload payload) {
        if (deliver_at < now_)
            throw std::invalid_argument("PastTime: deliver_at " + std::to_string(deliver_at) +
                                        " < now " + std::to_string(now_));
        if (recipient < 0 || static_cast<std::size_t>(recipient) >= agents_.size())
            throw std::invalid_argument("UnknownAgent: recipient " + std::to_string(recipient));
        Event ev;
        ev.deliver_at = deliver_at;
        ev.seq = next_seq_++;
        ev.recipient = recipient;
        ev.payload = std::move(payload);
        const EventHandle handle = ev.seq;
        queue_.push(std::move(ev));
        return handle;
    }

    /// Message send with the latency model applied.
    EventHandle send(AgentId from, AgentId to, Payload payload) {
        const SimTime lat = latency_.one_way_ns(from, to, &jitter_rng_);
        return schedule(now_ + lat, to, std::move(payload));
    }

    /// Self-scheduled alarm; no network latency.
    EventHandle wakeup(AgentId agent, SimTime at, std::int64_t tag = 0) {
        return schedule(at, agent, WakeupMsg{tag});
    }

    void cancel_event(EventHandle handle) { cancelled_.insert(handle); }

    /// Processes all events with deliver_at <= end; leaves the clock at end.
    std::int64_t run_until(SimTime end) {
        std::int64_t processed = 0;
        while (!queue_.empty() && queue_.top().deliver_at <= end) {
            Event ev = queue_.top();
            queue_.pop();
            if (auto it = cancelled_.find(ev.seq); it != cancelled_.end()) {
                cancelled_.erase(it);
                continue;
            }
            now_ = ev.deliver_at;
            ++processed;
            agents_[static_cast<std::size_t>(ev.recipient)]->on_event(*this, ev);
        }
        now_ = std::max(now_, end);
        return processed;
    }

    SimTime now() const { return now_; }
    std::uint64_t master_seed() const { return master_seed_; }
    LatencyModel& latency() { return latency_; }
    const LatencyModel& latency() const { return latency_; }
    std::size_t agent_count() const { return agents_.size(); }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.deliver_at != b.deliver_at) return a.deliver_at > b.deliver_at;
            return a.seq > b.seq;
        }
    };

    std::uint64_t master_seed_;
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::vector<Agent*> agents_;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::unordered_set<EventHandle> cancelled_;
    LatencyModel latency_;
    RngStream jitter_rng_;
};

} // namespace exsim
