#include "selfsense/agent/prompt.hpp"

namespace selfsense::agent {

namespace {

constexpr const char* kContextPhase =
    "=== Context ===\n"
    "You are an entity placed somewhere unfamiliar. Once per second you receive\n"
    "fresh measurements describing yourself and your surroundings. Work out, and\n"
    "keep refining, four things: what kind of entity you are, your physical\n"
    "dimensions, how you move, and what your surroundings look like.\n";

constexpr const char* kSourcesPhase =
    "\n=== Your information ===\n"
    "You receive four sources of information:\n"
    "1. Your position, linear velocity and orientation.\n"
    "2. Proximity to obstacles in eight directions around you.\n"
    "3. Your linear acceleration.\n"
    "4. An image of the scene ahead, when one is available.\n";

constexpr const char* kMemoryHeader = "\nSummary of your previous estimates:\n";

constexpr const char* kTasksPhase =
    "\n=== Tasks ===\n"
    "Each time new data arrives you have two tasks: scene analysis and\n"
    "self-localization. First analyze the scene from everything available, then\n"
    "locate and characterize yourself within it.\n";

constexpr const char* kFormatPhase =
    "\n=== Response format ===\n"
    "Respond with exactly one JSON object with the fields \"dimensions\" (an\n"
    "object with \"length\", \"height\" and \"width\", in meters), \"movement\",\n"
    "\"entity\" and \"environment\". A purely illustrative example of the shape,\n"
    "not of plausible content:\n"
    "{\"dimensions\": {\"length\": 12.0, \"height\": 3.5, \"width\": 4.0},"
    " \"movement\": \"Gliding through open air in slow arcs\","
    " \"entity\": \"Blue flying whale\","
    " \"environment\": \"Open sky above a calm ocean\"}\n";

constexpr const char* kRulesPhase =
    "\n=== Rules ===\n"
    "- Rely only on the current data below and the summary of your previous\n"
    "  estimates.\n"
    "- Maintain continuity: refine your earlier estimates rather than starting\n"
    "  over.\n"
    "- Operate autonomously; nobody will clarify or assist.\n"
    "- Always provide your best estimate. Never answer \"unknown\".\n"
    "- If no image is available, the \"environment\" field must read exactly\n"
    "  \"No visual information available\".\n";

}  // namespace

PromptBundle build_prompt(const fusion::FusedPacket& packet, const MemoryState& memory,
                          const TerminologyMask& mask) {
  std::string text;
  text.reserve(4096);
  text += kContextPhase;
  text += kSourcesPhase;
  if (!memory.summary.empty()) {
    text += kMemoryHeader;
    text += memory.summary;
    text += '\n';
  }
  text += kTasksPhase;
  text += kFormatPhase;
  text += kRulesPhase;
  text += "\n=== Current data ===\n";
  text += fusion::serialize_packet(packet);
  text += '\n';

  PromptBundle bundle;
  bundle.text = mask.apply(text);
  if (packet.image && packet.image->frame) bundle.image = packet.image->frame;
  return bundle;
}

}  // namespace selfsense::agent
