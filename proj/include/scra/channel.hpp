#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scra/schemes.hpp"

namespace scra {

struct MalformedFrame : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wire frame: version byte, scheme-tag byte, field-count byte, then each
// field as a u32 big-endian length prefix followed by canonical big-endian
// magnitude bytes. The codec is p-agnostic; residue range checks belong to
// the authenticator.
std::vector<std::uint8_t> encode(const LoginMessage& msg);
LoginMessage decode(std::span<const std::uint8_t> bytes);

// Monotonic simulated time in integer ticks.
class SimClock {
 public:
  explicit SimClock(long start = 0) : now_(start) {}
  long now() const { return now_; }
  void advance(long ticks) {
    if (ticks <= 0) throw std::invalid_argument("SimClock::advance: ticks must be positive");
    now_ += ticks;
  }

 private:
  long now_;
};

// Simulated transport with a configurable delivery delay and an optional
// interception tap that receives a copy of every frame.
class Channel {
 public:
  using Tap = std::function<void(const std::vector<std::uint8_t>&)>;

  Channel(SimClock& clock, long delay = 0) : clock_(clock), delay_(delay) {}
  void set_delay(long delay) { delay_ = delay; }
  void attach_tap(Tap tap) { tap_ = std::move(tap); }

  // Returns the delivered frame and its arrival tick (send tick + delay).
  std::pair<std::vector<std::uint8_t>, long> deliver(const std::vector<std::uint8_t>& frame);

 private:
  SimClock& clock_;
  long delay_;
  Tap tap_;
};

}  // namespace scra
