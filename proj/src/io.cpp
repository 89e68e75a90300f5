#include "zpart/io.hpp"

#include <fstream>

#include "zpart/errors.hpp"

namespace zpart {

namespace {

mpz_class parse_number(const nlohmann::json& v, std::size_t index) {
  // Plain JSON integers are accepted on input; output always uses strings.
  if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<std::int64_t>()));
  if (!v.is_string()) throw Error("numbers[" + std::to_string(index) + "] must be a decimal string");
  const auto& s = v.get_ref<const std::string&>();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw Error("numbers[" + std::to_string(index) + "] = '" + s + "' is not a decimal integer");
  }
  return mpz_class(s, 10);
}

}  // namespace

InstanceFile instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("numbers") || !doc["numbers"].is_array()) {
    throw Error("instance document needs a \"numbers\" array");
  }
  std::vector<mpz_class> numbers;
  const auto& arr = doc["numbers"];
  for (std::size_t k = 0; k < arr.size(); ++k) numbers.push_back(parse_number(arr[k], k));

  std::optional<unsigned> radix;
  if (doc.contains("radix") && !doc["radix"].is_null()) {
    if (!doc["radix"].is_number_unsigned()) throw Error("\"radix\" must be a positive integer or null");
    radix = doc["radix"].get<unsigned>();
  }
  std::string source;
  if (doc.contains("source") && doc["source"].is_string()) source = doc["source"].get<std::string>();
  return InstanceFile{PartitionInstance(std::move(numbers)), radix, std::move(source)};
}

nlohmann::json instance_to_json(const InstanceFile& file) {
  nlohmann::json numbers = nlohmann::json::array();
  for (const auto& x : file.instance.numbers()) numbers.push_back(x.get_str());
  nlohmann::json doc;
  doc["numbers"] = std::move(numbers);
  doc["radix"] = file.radix ? nlohmann::json(*file.radix) : nlohmann::json(nullptr);
  doc["source"] = file.source;
  return doc;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

InstanceFile load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

void save_instance(const std::string& path, const InstanceFile& file) {
  write_json_file(path, instance_to_json(file));
}

}  // namespace zpart
