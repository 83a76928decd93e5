#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace garmdiff {

// Container format shared by .disp, .dtpl and checkpoint files:
//   magic line ("GDISP1\n", "GDTPL1\n", "GCKPT1\n")
//   uint32 LE header length
//   compact JSON header (keys sorted by nlohmann::json)
//   raw payload bytes (little-endian float32 blobs, bit-packed masks)
// Writes are byte-deterministic for identical inputs.

struct BlobFile {
    std::string magic; // 6 chars, without the trailing newline
    nlohmann::json header;
    std::vector<uint8_t> payload;
};

void writeBlobFile(const std::string& path, const BlobFile& file);
BlobFile readBlobFile(const std::string& path, const std::string& expectedMagic);

// float64 -> float32 little-endian append / extract
void appendF32(std::vector<uint8_t>& out, const std::vector<double>& values);
std::vector<double> extractF32(const std::vector<uint8_t>& in, size_t offset, size_t count);

// LSB-first bit packing
void appendBits(std::vector<uint8_t>& out, const std::vector<uint8_t>& bits);
std::vector<uint8_t> extractBits(const std::vector<uint8_t>& in, size_t offset, size_t count);

// Whole-file helpers
std::string readTextFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& text);

} // namespace garmdiff
