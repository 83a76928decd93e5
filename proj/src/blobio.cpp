#include "garmdiff/blobio.hpp"

#include <cstring>
#include <fstream>

#include "garmdiff/errors.hpp"

namespace garmdiff {

void writeBlobFile(const std::string& path, const BlobFile& file) {
    if (file.magic.size() != 6)
        throw IoError("blob magic must be 6 characters: " + file.magic);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out.write(file.magic.data(), 6);
    out.put('\n');
    const std::string header = file.header.dump();
    const uint32_t len = static_cast<uint32_t>(header.size());
    uint8_t lenBytes[4] = {static_cast<uint8_t>(len & 0xff), static_cast<uint8_t>((len >> 8) & 0xff),
                           static_cast<uint8_t>((len >> 16) & 0xff), static_cast<uint8_t>((len >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(lenBytes), 4);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(file.payload.data()), static_cast<std::streamsize>(file.payload.size()));
    if (!out)
        throw IoError("short write: " + path);
}

BlobFile readBlobFile(const std::string& path, const std::string& expectedMagic) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open: " + path);
    BlobFile file;
    char magic[7];
    in.read(magic, 7);
    if (!in || magic[6] != '\n')
        throw IoError("bad magic in " + path);
    file.magic.assign(magic, 6);
    if (file.magic != expectedMagic)
        throw IoError("expected " + expectedMagic + " file, found '" + file.magic + "' in " + path);
    uint8_t lenBytes[4];
    in.read(reinterpret_cast<char*>(lenBytes), 4);
    if (!in)
        throw IoError("truncated header in " + path);
    const uint32_t len = static_cast<uint32_t>(lenBytes[0]) | (static_cast<uint32_t>(lenBytes[1]) << 8) |
                         (static_cast<uint32_t>(lenBytes[2]) << 16) | (static_cast<uint32_t>(lenBytes[3]) << 24);
    std::string header(len, '\0');
    in.read(header.data(), len);
    if (!in)
        throw IoError("truncated header in " + path);
    try {
        file.header = nlohmann::json::parse(header);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad JSON header in " + path + ": " + e.what());
    }
    file.payload.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return file;
}

void appendF32(std::vector<uint8_t>& out, const std::vector<double>& values) {
    static_assert(sizeof(float) == 4);
    size_t base = out.size();
    out.resize(base + values.size() * 4);
    for (size_t i = 0; i < values.size(); ++i) {
        const float f = static_cast<float>(values[i]);
        uint32_t bits;
        std::memcpy(&bits, &f, 4);
        out[base + 4 * i + 0] = static_cast<uint8_t>(bits & 0xff);
        out[base + 4 * i + 1] = static_cast<uint8_t>((bits >> 8) & 0xff);
        out[base + 4 * i + 2] = static_cast<uint8_t>((bits >> 16) & 0xff);
        out[base + 4 * i + 3] = static_cast<uint8_t>((bits >> 24) & 0xff);
    }
}

std::vector<double> extractF32(const std::vector<uint8_t>& in, size_t offset, size_t count) {
    if (offset + count * 4 > in.size())
        throw IoError("float blob out of range");
    std::vector<double> values(count);
    for (size_t i = 0; i < count; ++i) {
        const uint32_t bits = static_cast<uint32_t>(in[offset + 4 * i]) |
                              (static_cast<uint32_t>(in[offset + 4 * i + 1]) << 8) |
                              (static_cast<uint32_t>(in[offset + 4 * i + 2]) << 16) |
                              (static_cast<uint32_t>(in[offset + 4 * i + 3]) << 24);
        float f;
        std::memcpy(&f, &bits, 4);
        values[i] = static_cast<double>(f);
    }
    return values;
}

void appendBits(std::vector<uint8_t>& out, const std::vector<uint8_t>& bits) {
    const size_t base = out.size();
    out.resize(base + (bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            out[base + i / 8] |= static_cast<uint8_t>(1u << (i % 8));
}

std::vector<uint8_t> extractBits(const std::vector<uint8_t>& in, size_t offset, size_t count) {
    if (offset + (count + 7) / 8 > in.size())
        throw IoError("bit blob out of range");
    std::vector<uint8_t> bits(count);
    for (size_t i = 0; i < count; ++i)
        bits[i] = (in[offset + i / 8] >> (i % 8)) & 1u;
    return bits;
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void writeTextFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("short write: " + path);
}

} // namespace garmdiff
