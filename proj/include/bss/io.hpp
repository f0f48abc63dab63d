#pragma once

#include <filesystem>

#include "bss/types.hpp"

namespace bss::io {

struct AudioBuffer {
    SignalMatrix signal;   // one row per audio channel, values in [-1, 1]
    int sample_rate = 0;
};

struct ImageBuffer {
    SignalMatrix signal;   // one row = one image flattened row-major, values in [0, 1]
    int width = 0;
    int height = 0;
};

// 16-bit PCM WAV. Samples map to s / 32768.0 on read and
// clamp(round(v * 32768), -32768, 32767) on write, so the round trip is
// bit-exact for grid-aligned values.
AudioBuffer read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer);

// Binary PGM ("P5"), maxval 255. Pixels map to p / 255.0.
ImageBuffer read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const ImageBuffer& buffer);

// Rectangular numeric CSV, one channel per row, comma separators, LF line
// endings, no header. Writes 17 significant digits so the round trip is
// value-exact for finite doubles.
SignalMatrix read_csv_matrix(const std::filesystem::path& path);
void write_csv_matrix(const std::filesystem::path& path, const SignalMatrix& m);

} // namespace bss::io
