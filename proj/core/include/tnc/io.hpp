#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tnc/network.hpp"

namespace tnc {

inline constexpr int kDocumentVersion = 1;

/// Serializes to the network document format (see docs/format.md). Entries
/// are written with 17 significant digits, so save(load(save(x))) is
/// byte-identical to save(x). A nonempty `config_json` (one compact JSON
/// object) is stored verbatim under "config"; the loader ignores it.
std::string save_tn(const TensorNetwork& tn, std::string_view config_json = {});

/// Parses a network document. Violations throw SchemaError whose location is
/// a JSON pointer into the document.
TensorNetwork load_tn(std::string_view text);

void save_tn_file(const TensorNetwork& tn, const std::filesystem::path& path,
                  std::string_view config_json = {});
TensorNetwork load_tn_file(const std::filesystem::path& path);

}  // namespace tnc
