#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

#include "selfsense/errors.hpp"
#include "selfsense/sim/sensors.hpp"

namespace selfsense::fusion {

template <typename T>
struct Timed {
  double t = 0.0;
  T value;
};

/// Time-ordered queue of raw samples, pruned to a retention horizon.
template <typename T>
class TimedQueue {
 public:
  void push(double t, T value) {
    if (!items_.empty() && t <= items_.back().t) {
      throw Error("TimedQueue: timestamps must be strictly increasing");
    }
    items_.push_back({t, std::move(value)});
  }

  void prune_older_than(double t) {
    while (!items_.empty() && items_.front().t < t) items_.pop_front();
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::deque<Timed<T>>& items() const { return items_; }

  /// Sample minimizing |t - t_ref|; ties break toward the earlier sample.
  const Timed<T>* nearest(double t_ref) const {
    const Timed<T>* best = nullptr;
    double best_dt = std::numeric_limits<double>::infinity();
    for (const auto& item : items_) {
      const double dt = std::abs(item.t - t_ref);
      if (dt < best_dt) {  // strict: an equal later sample never displaces an earlier one
        best_dt = dt;
        best = &item;
      }
    }
    return best;
  }

 private:
  std::deque<Timed<T>> items_;
};

/// The sample nearest t_ref, included only when within the matching window.
template <typename T>
std::optional<Timed<T>> align_nearest(const TimedQueue<T>& queue, double t_ref,
                                      double window) {
  const Timed<T>* best = queue.nearest(t_ref);
  if (!best || std::abs(best->t - t_ref) > window) return std::nullopt;
  return *best;
}

/// Per-modality retention buffers fed by the simulation loop.
struct SensorBuffers {
  double horizon = 2.0;  // seconds

  TimedQueue<sim::RawOdometrySample> odometry;
  TimedQueue<sim::RawImuSample> imu;
  TimedQueue<sim::RawLidarScan> lidar;
  TimedQueue<sim::ImageFrame> camera;

  void push_odometry(const sim::RawOdometrySample& s) { odometry.push(s.timestamp, s); }
  void push_imu(const sim::RawImuSample& s) { imu.push(s.timestamp, s); }
  void push_lidar(const sim::RawLidarScan& s) { lidar.push(s.timestamp, s); }
  void push_camera(sim::ImageFrame s) { camera.push(s.timestamp, std::move(s)); }

  void prune(double now) {
    odometry.prune_older_than(now - horizon);
    imu.prune_older_than(now - horizon);
    lidar.prune_older_than(now - horizon);
    camera.prune_older_than(now - horizon);
  }
};

}  // namespace selfsense::fusion
