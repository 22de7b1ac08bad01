#include <cmath>

#include "selfsense/fusion/packet.hpp"

namespace selfsense::fusion {

SectorScan sectorize_scan(const sim::RawLidarScan& scan) {
  if (static_cast<int>(scan.ranges.size()) != sim::RawLidarScan::kBeamCount) {
    throw MalformedScan("expected 529 beams, got " + std::to_string(scan.ranges.size()));
  }

  SectorScan out;
  out.ranges.fill(sim::RawLidarScan::kMaxRange);
  // Beam k sits at k * 0.68 degrees CCW from the heading. Shift by the front
  // half-sector and bucket into 45 degree CCW slots, then map CCW slots onto
  // the compass-rose output order (which runs clockwise).
  static constexpr int kCcwToCompass[8] = {0, 7, 6, 5, 4, 3, 2, 1};
  for (int k = 0; k < sim::RawLidarScan::kBeamCount; ++k) {
    const double shifted = std::fmod(k * sim::RawLidarScan::kAngleIncrementDeg + 22.5, 360.0);
    const int ccw_slot = static_cast<int>(shifted / 45.0);
    const int sector = kCcwToCompass[ccw_slot];
    out.ranges[sector] = std::min(out.ranges[sector], scan.ranges[k]);
  }
  return out;
}

double truncate_one_decimal(double x) {
  if (!std::isfinite(x)) throw Error("truncate_one_decimal: non-finite input");
  return std::trunc(x * 10.0) / 10.0;
}

double rereference_timestamp(double session_start, double t) {
  if (t < session_start) {
    throw NegativeTime("timestamp precedes the session start");
  }
  return truncate_one_decimal(t - session_start);
}

}  // namespace selfsense::fusion
