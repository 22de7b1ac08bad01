#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "selfsense/ablation.hpp"
#include "selfsense/fusion/buffers.hpp"

namespace selfsense::fusion {

/// Minimum obstacle distance per 45 degree compass sector, robot frame.
/// Order: front, front-right, right, rear-right, rear, rear-left, left,
/// front-left. The front sector spans [-22.5, 22.5) degrees around the
/// heading; boundary beams belong to the sector whose lower edge they touch.
struct SectorScan {
  static constexpr std::array<const char*, 8> kKeys = {
      "front", "front-right", "right", "rear-right",
      "rear",  "rear-left",   "left",  "front-left"};

  std::array<double, 8> ranges{};
};

/// Throws MalformedScan unless the scan carries exactly 529 beams.
SectorScan sectorize_scan(const sim::RawLidarScan& scan);

/// Truncation toward zero to one decimal place (not rounding). Preserves a
/// negative zero; serialization normalizes it to 0.0.
double truncate_one_decimal(double x);

/// t - session_start, truncated to one decimal. Throws NegativeTime.
double rereference_timestamp(double session_start, double t);

struct OdometryReading {
  std::array<double, 3> position{};
  std::array<double, 4> orientation{};  // x, y, z, w
  std::array<double, 3> linear_velocity{};
  std::array<double, 3> angular_velocity{};
};

struct ImuReading {
  std::array<double, 3> linear_acceleration{};
};

struct ImagePayload {
  int width = sim::ImageFrame::kWidth;
  int height = sim::ImageFrame::kHeight;
  /// File reference recorded in the serialized packet (reference mode).
  std::string ref;
  /// Pixel data when the packet was assembled in-process.
  std::shared_ptr<const sim::ImageFrame> frame;
};

/// One synchronized 1 Hz instance of all live modalities, numerics truncated
/// to one decimal and the timestamp re-referenced to the session start.
/// A modality is nullopt either because it was ablated (key omitted when
/// serialized) or because no raw sample fell inside the matching window
/// (key serialized as null).
struct FusedPacket {
  double timestamp = 0.0;
  std::optional<OdometryReading> odometry;
  std::optional<ImuReading> imu;
  std::optional<ImagePayload> image;
  std::optional<SectorScan> scan;
  AblationMask ablated;
};

inline constexpr double kMatchWindow = 0.050;  // seconds

FusedPacket make_packet(const SensorBuffers& buffers, double t_ref, double session_start,
                        const AblationMask& ablation, double window = kMatchWindow);

enum class ImageMode { Reference, Base64 };

/// Canonical JSON: fixed key order (timestamp, odometry, imu, image, scan),
/// one-decimal fixed-point numerics, image as file reference or base64 PNG.
std::string serialize_packet(const FusedPacket& packet, ImageMode mode = ImageMode::Reference);

FusedPacket parse_packet(const std::string& json_text);

}  // namespace selfsense::fusion
