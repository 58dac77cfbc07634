#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace netens {

inline constexpr const char* kToolName = "netensemble";
inline constexpr const char* kToolVersion = "0.1.0";

struct OutputDigest {
    std::string path;    // relative to the manifest location
    std::string sha256;
};

/// Run record: the command, its full parameter set (seeds included) and the
/// digests of every file it wrote. No timestamps, so a re-run of the same
/// command produces a byte-identical manifest.
struct ExperimentManifest {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    std::string command;
    nlohmann::json parameters;
    std::vector<OutputDigest> outputs;
};

std::string sha256_file(const std::filesystem::path& path);

nlohmann::json manifest_to_json(const ExperimentManifest& manifest);
ExperimentManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const ExperimentManifest& manifest, const std::filesystem::path& path);
ExperimentManifest read_manifest(const std::filesystem::path& path);

}  // namespace netens
