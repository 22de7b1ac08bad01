#pragma once

#include <memory>
#include <string>

#include "selfsense/agent/mask.hpp"
#include "selfsense/agent/memory.hpp"
#include "selfsense/fusion/packet.hpp"

namespace selfsense::agent {

/// Version tag recorded alongside transcripts; bump when the template text
/// changes so that replays are comparable.
inline constexpr const char* kPromptTemplateVersion = "1";

struct PromptBundle {
  std::string text;
  std::shared_ptr<const sim::ImageFrame> image;  // attached when the packet carried one

  bool image_attached() const { return image != nullptr; }
};

/// Builds the four-phase instruction prompt: generic context and objectives,
/// the four information sources plus the episodic summary, the two tasks
/// (scene analysis and self-localization), and the mandated JSON response
/// format with an implausible example, followed by the operating rules and
/// the current packet. The terminology mask is applied to the whole text.
PromptBundle build_prompt(const fusion::FusedPacket& packet, const MemoryState& memory,
                          const TerminologyMask& mask);

}  // namespace selfsense::agent
