#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "zpart/instance.hpp"

namespace zpart {

// {"numbers": ["x1", ...], "radix": b | null, "source": "..."}; numbers are decimal strings.
struct InstanceFile {
  PartitionInstance instance;
  std::optional<unsigned> radix;
  std::string source;
};

InstanceFile instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const InstanceFile& file);

InstanceFile load_instance(const std::string& path);
void save_instance(const std::string& path, const InstanceFile& file);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace zpart
