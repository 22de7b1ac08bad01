#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>

#include "selfsense/errors.hpp"

namespace selfsense::io {

/// Append-only JSON-lines writer.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw IoError("cannot open for writing: " + path.string());
  }

  void write_line(const std::string& line) {
    out_ << line << '\n';
    if (!out_) throw IoError("short write to jsonl stream");
  }

  void write(const nlohmann::ordered_json& j) { write_line(j.dump()); }

  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
};

/// Calls `fn` for each parsed line of a JSONL file.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&)>& fn);

/// Reads an entire text file (used by replay and golden tests).
std::string read_text_file(const std::filesystem::path& path);

}  // namespace selfsense::io
