#include "netens/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "netens/json_io.hpp"

namespace netens {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot digest missing file: " + path.string());

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 init failed");

    char buffer[1 << 16];
    while (in) {
        in.read(buffer, sizeof(buffer));
        const std::streamsize got = in.gcount();
        if (got > 0 && EVP_DigestUpdate(ctx.get(), buffer, static_cast<std::size_t>(got)) != 1)
            throw std::runtime_error("sha256 update failed");
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw std::runtime_error("sha256 final failed");

    std::string hex(2 * len, '0');
    for (unsigned int i = 0; i < len; ++i)
        std::snprintf(hex.data() + 2 * i, 3, "%02x", digest[i]);
    return hex;
}

nlohmann::json manifest_to_json(const ExperimentManifest& manifest) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const OutputDigest& o : manifest.outputs)
        outputs.push_back({{"path", o.path}, {"sha256", o.sha256}});
    return nlohmann::json{{"tool", manifest.tool},
                          {"version", manifest.version},
                          {"command", manifest.command},
                          {"parameters", manifest.parameters},
                          {"outputs", outputs}};
}

ExperimentManifest manifest_from_json(const nlohmann::json& j) {
    ExperimentManifest manifest;
    manifest.tool = j.at("tool").get<std::string>();
    manifest.version = j.at("version").get<std::string>();
    manifest.command = j.at("command").get<std::string>();
    manifest.parameters = j.at("parameters");
    for (const auto& o : j.at("outputs"))
        manifest.outputs.push_back(
            {o.at("path").get<std::string>(), o.at("sha256").get<std::string>()});
    return manifest;
}

void write_manifest(const ExperimentManifest& manifest, const std::filesystem::path& path) {
    save_json(manifest_to_json(manifest), path);
}

ExperimentManifest read_manifest(const std::filesystem::path& path) {
    return manifest_from_json(load_json(path));
}

}  // namespace netens
