#include "selfsense/fusion/packet.hpp"

#include <cinttypes>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "selfsense/io/base64.hpp"
#include "selfsense/io/png.hpp"

namespace selfsense::fusion {

namespace {

constexpr const char* kBase64Prefix = "data:image/png;base64,";

std::string default_image_ref(double t_rel) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "images/%07" PRId64 ".png",
                static_cast<std::int64_t>(std::llround(t_rel * 10.0)));
  return buf;
}

void append_number(std::string& out, double v) {
  if (v == 0.0) v = 0.0;  // normalize -0.0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  out += buf;
}

template <std::size_t N>
void append_array(std::string& out, const std::array<double, N>& values) {
  out += '[';
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ',';
    append_number(out, values[i]);
  }
  out += ']';
}

template <std::size_t N>
std::array<double, N> truncate_all(const std::array<double, N>& in) {
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = truncate_one_decimal(in[i]);
  return out;
}

template <std::size_t N>
std::array<double, N> read_array(const nlohmann::json& j) {
  std::array<double, N> out;
  if (!j.is_array() || j.size() != N) throw Error("packet: malformed numeric array");
  for (std::size_t i = 0; i < N; ++i) out[i] = j.at(i).get<double>();
  return out;
}

}  // namespace

FusedPacket make_packet(const SensorBuffers& buffers, double t_ref, double session_start,
                        const AblationMask& ablation, double window) {
  FusedPacket packet;
  packet.timestamp = rereference_timestamp(session_start, t_ref);
  packet.ablated = ablation;

  if (!ablation.odometry) {
    if (auto m = align_nearest(buffers.odometry, t_ref, window)) {
      const sim::RawOdometrySample& s = m->value;
      OdometryReading r;
      r.position = truncate_all<3>({s.position.x(), s.position.y(), s.position.z()});
      r.orientation = truncate_all<4>(
          {s.orientation.x(), s.orientation.y(), s.orientation.z(), s.orientation.w()});
      r.linear_velocity = truncate_all<3>(
          {s.linear_velocity.x(), s.linear_velocity.y(), s.linear_velocity.z()});
      r.angular_velocity = truncate_all<3>(
          {s.angular_velocity.x(), s.angular_velocity.y(), s.angular_velocity.z()});
      packet.odometry = r;
    }
  }

  if (!ablation.imu) {
    if (auto m = align_nearest(buffers.imu, t_ref, window)) {
      const sim::RawImuSample& s = m->value;
      packet.imu = ImuReading{truncate_all<3>({s.linear_acceleration.x(),
                                               s.linear_acceleration.y(),
                                               s.linear_acceleration.z()})};
    }
  }

  if (!ablation.camera) {
    if (auto m = align_nearest(buffers.camera, t_ref, window)) {
      ImagePayload img;
      img.width = m->value.width;
      img.height = m->value.height;
      img.frame = std::make_shared<sim::ImageFrame>(m->value);
      img.ref = default_image_ref(packet.timestamp);
      packet.image = std::move(img);
    }
  }

  if (!ablation.lidar) {
    if (auto m = align_nearest(buffers.lidar, t_ref, window)) {
      SectorScan sectors = sectorize_scan(m->value);
      for (double& r : sectors.ranges) r = truncate_one_decimal(r);
      packet.scan = sectors;
    }
  }

  return packet;
}

std::string serialize_packet(const FusedPacket& packet, ImageMode mode) {
  std::string out;
  out.reserve(512);
  out += "{\"timestamp\":";
  append_number(out, packet.timestamp);

  if (!packet.ablated.odometry) {
    out += ",\"odometry\":";
    if (packet.odometry) {
      out += "{\"position\":";
      append_array(out, packet.odometry->position);
      out += ",\"orientation\":";
      append_array(out, packet.odometry->orientation);
      out += ",\"linear_velocity\":";
      append_array(out, packet.odometry->linear_velocity);
      out += ",\"angular_velocity\":";
      append_array(out, packet.odometry->angular_velocity);
      out += '}';
    } else {
      out += "null";
    }
  }

  if (!packet.ablated.imu) {
    out += ",\"imu\":";
    if (packet.imu) {
      out += "{\"linear_acceleration\":";
      append_array(out, packet.imu->linear_acceleration);
      out += '}';
    } else {
      out += "null";
    }
  }

  if (!packet.ablated.camera) {
    out += ",\"image\":";
    if (packet.image) {
      if (mode == ImageMode::Base64) {
        if (!packet.image->frame) throw Error("serialize_packet: no pixels to embed");
        const auto png = io::encode_png(packet.image->frame->width,
                                        packet.image->frame->height,
                                        packet.image->frame->pixels);
        out += '"';
        out += kBase64Prefix;
        out += io::base64_encode(png);
        out += '"';
      } else {
        out += nlohmann::json(packet.image->ref).dump();
      }
    } else {
      out += "null";
    }
  }

  if (!packet.ablated.lidar) {
    out += ",\"scan\":";
    if (packet.scan) {
      out += '{';
      for (std::size_t i = 0; i < SectorScan::kKeys.size(); ++i) {
        if (i) out += ',';
        out += '"';
        out += SectorScan::kKeys[i];
        out += "\":";
        append_number(out, packet.scan->ranges[i]);
      }
      out += '}';
    } else {
      out += "null";
    }
  }

  out += '}';
  return out;
}

FusedPacket parse_packet(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  FusedPacket packet;
  packet.timestamp = j.at("timestamp").get<double>();

  packet.ablated.odometry = !j.contains("odometry");
  if (!packet.ablated.odometry && !j["odometry"].is_null()) {
    OdometryReading r;
    r.position = read_array<3>(j["odometry"].at("position"));
    r.orientation = read_array<4>(j["odometry"].at("orientation"));
    r.linear_velocity = read_array<3>(j["odometry"].at("linear_velocity"));
    r.angular_velocity = read_array<3>(j["odometry"].at("angular_velocity"));
    packet.odometry = r;
  }

  packet.ablated.imu = !j.contains("imu");
  if (!packet.ablated.imu && !j["imu"].is_null()) {
    packet.imu = ImuReading{read_array<3>(j["imu"].at("linear_acceleration"))};
  }

  packet.ablated.camera = !j.contains("image");
  if (!packet.ablated.camera && !j["image"].is_null()) {
    const std::string text = j["image"].get<std::string>();
    ImagePayload img;
    if (text.rfind(kBase64Prefix, 0) == 0) {
      const auto png = io::base64_decode(text.substr(std::string(kBase64Prefix).size()));
      const auto decoded = io::decode_png(png);
      auto frame = std::make_shared<sim::ImageFrame>();
      frame->width = decoded.width;
      frame->height = decoded.height;
      frame->pixels = decoded.rgb;
      img.width = decoded.width;
      img.height = decoded.height;
      img.frame = std::move(frame);
    } else {
      img.ref = text;
    }
    packet.image = std::move(img);
  }

  packet.ablated.lidar = !j.contains("scan");
  if (!packet.ablated.lidar && !j["scan"].is_null()) {
    SectorScan sectors;
    for (std::size_t i = 0; i < SectorScan::kKeys.size(); ++i) {
      sectors.ranges[i] = j["scan"].at(SectorScan::kKeys[i]).get<double>();
    }
    packet.scan = sectors;
  }

  return packet;
}

}  // namespace selfsense::fusion
