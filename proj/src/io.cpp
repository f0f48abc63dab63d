#include "bss/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "bss/error.hpp"

namespace bss::io {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

uint16_t read_u16le(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t read_u32le(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

void put_u16le(std::string& out, uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32le(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

} // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    std::array<unsigned char, 12> riff{};
    if (!in.read(reinterpret_cast<char*>(riff.data()), riff.size())) {
        throw FormatError("'" + path.string() + "': truncated RIFF header");
    }
    if (std::memcmp(riff.data(), "RIFF", 4) != 0 || std::memcmp(riff.data() + 8, "WAVE", 4) != 0) {
        throw FormatError("'" + path.string() + "': not a RIFF/WAVE file");
    }

    bool have_fmt = false;
    uint16_t format_tag = 0, channels = 0, bits_per_sample = 0;
    uint32_t sample_rate = 0;
    std::vector<unsigned char> data;
    bool have_data = false;

    std::array<unsigned char, 8> header{};
    while (in.read(reinterpret_cast<char*>(header.data()), header.size())) {
        const uint32_t size = read_u32le(header.data() + 4);
        if (std::memcmp(header.data(), "fmt ", 4) == 0) {
            if (size < 16) throw FormatError("'" + path.string() + "': fmt chunk too short");
            std::vector<unsigned char> fmt(size);
            if (!in.read(reinterpret_cast<char*>(fmt.data()), size)) {
                throw FormatError("'" + path.string() + "': truncated fmt chunk");
            }
            format_tag = read_u16le(fmt.data());
            channels = read_u16le(fmt.data() + 2);
            sample_rate = read_u32le(fmt.data() + 4);
            bits_per_sample = read_u16le(fmt.data() + 14);
            have_fmt = true;
        } else if (std::memcmp(header.data(), "data", 4) == 0) {
            data.resize(size);
            if (!in.read(reinterpret_cast<char*>(data.data()), size)) {
                throw FormatError("'" + path.string() + "': truncated data chunk");
            }
            have_data = true;
        } else {
            in.seekg(size, std::ios::cur);
        }
        if (size % 2 == 1) in.seekg(1, std::ios::cur);   // chunks are word-aligned
    }

    if (!have_fmt) throw FormatError("'" + path.string() + "': missing fmt chunk");
    if (!have_data) throw FormatError("'" + path.string() + "': missing data chunk");
    if (format_tag != 1) {
        throw FormatError("'" + path.string() + "': fmt format tag is " +
                          std::to_string(format_tag) + ", only PCM (1) is supported");
    }
    if (bits_per_sample != 16) {
        throw FormatError("'" + path.string() + "': fmt bits-per-sample is " +
                          std::to_string(bits_per_sample) + ", only 16 is supported");
    }
    if (channels == 0) throw FormatError("'" + path.string() + "': fmt channel count is 0");

    const size_t frame_bytes = 2u * channels;
    const size_t frames = data.size() / frame_bytes;
    if (frames == 0) throw FormatError("'" + path.string() + "': data chunk holds no frames");

    AudioBuffer buffer;
    buffer.sample_rate = static_cast<int>(sample_rate);
    buffer.signal.resize(channels, static_cast<Eigen::Index>(frames));
    for (size_t f = 0; f < frames; ++f) {
        const unsigned char* frame = data.data() + f * frame_bytes;
        for (uint16_t c = 0; c < channels; ++c) {
            const auto raw = static_cast<int16_t>(read_u16le(frame + 2u * c));
            buffer.signal(c, static_cast<Eigen::Index>(f)) = raw / 32768.0;
        }
    }
    return buffer;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer) {
    const Eigen::Index channels = buffer.signal.rows();
    const Eigen::Index frames = buffer.signal.cols();
    if (channels == 0 || frames == 0) throw std::invalid_argument("write_wav: empty signal");
    if (buffer.sample_rate <= 0) throw std::invalid_argument("write_wav: sample rate must be positive");

    const uint32_t data_bytes = static_cast<uint32_t>(2 * channels * frames);
    std::string out;
    out.reserve(44 + data_bytes);
    out.append("RIFF");
    put_u32le(out, 36 + data_bytes);
    out.append("WAVE");
    out.append("fmt ");
    put_u32le(out, 16);
    put_u16le(out, 1);                                        // PCM
    put_u16le(out, static_cast<uint16_t>(channels));
    put_u32le(out, static_cast<uint32_t>(buffer.sample_rate));
    put_u32le(out, static_cast<uint32_t>(buffer.sample_rate * 2 * channels));
    put_u16le(out, static_cast<uint16_t>(2 * channels));      // block align
    put_u16le(out, 16);
    out.append("data");
    put_u32le(out, data_bytes);

    for (Eigen::Index f = 0; f < frames; ++f) {
        for (Eigen::Index c = 0; c < channels; ++c) {
            const double scaled = std::round(buffer.signal(c, f) * 32768.0);
            const auto clamped = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
            put_u16le(out, static_cast<uint16_t>(clamped));
        }
    }

    std::ofstream file = open_output(path);
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

// PNM token reader: skips whitespace and '#' comment lines.
std::string next_pnm_token(std::istream& in) {
    std::string token;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch)) {
        token.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    return token;
}

int parse_pnm_int(std::istream& in, const std::filesystem::path& path, const char* field) {
    const std::string token = next_pnm_token(in);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || value <= 0) {
        throw FormatError("'" + path.string() + "': bad PGM " + std::string(field) +
                          " '" + token + "'");
    }
    return value;
}

} // namespace

ImageBuffer read_pgm(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    const std::string magic = next_pnm_token(in);
    if (magic != "P5") {
        throw FormatError("'" + path.string() + "': magic is '" + magic +
                          "', only binary PGM ('P5') is supported");
    }
    const int width = parse_pnm_int(in, path, "width");
    const int height = parse_pnm_int(in, path, "height");
    const int maxval = parse_pnm_int(in, path, "maxval");
    if (maxval != 255) {
        throw FormatError("'" + path.string() + "': maxval is " + std::to_string(maxval) +
                          ", only 255 is supported");
    }
    // The header ends with exactly one whitespace byte, already consumed by
    // the token reader.

    const size_t pixels = static_cast<size_t>(width) * static_cast<size_t>(height);
    std::vector<unsigned char> raw(pixels);
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(pixels))) {
        throw FormatError("'" + path.string() + "': truncated pixel data");
    }

    ImageBuffer buffer;
    buffer.width = width;
    buffer.height = height;
    buffer.signal.resize(1, static_cast<Eigen::Index>(pixels));
    for (size_t i = 0; i < pixels; ++i) {
        buffer.signal(0, static_cast<Eigen::Index>(i)) = raw[i] / 255.0;
    }
    return buffer;
}

void write_pgm(const std::filesystem::path& path, const ImageBuffer& buffer) {
    if (buffer.signal.rows() != 1) {
        throw std::invalid_argument("write_pgm: buffer must hold exactly one image row");
    }
    if (buffer.width <= 0 || buffer.height <= 0) {
        throw std::invalid_argument("write_pgm: width and height must be positive");
    }
    const auto pixels = static_cast<Eigen::Index>(buffer.width) * buffer.height;
    if (buffer.signal.cols() != pixels) {
        throw std::invalid_argument("write_pgm: row length does not equal width * height");
    }

    std::string out = "P5\n" + std::to_string(buffer.width) + " " +
                      std::to_string(buffer.height) + "\n255\n";
    out.reserve(out.size() + static_cast<size_t>(pixels));
    for (Eigen::Index i = 0; i < pixels; ++i) {
        const double scaled = std::round(buffer.signal(0, i) * 255.0);
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0))));
    }

    std::ofstream file = open_output(path);
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw IoError("failed writing '" + path.string() + "'");
}

SignalMatrix read_csv_matrix(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);

    std::vector<std::vector<double>> rows;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == EOF) break;   // trailing newline

        std::vector<double> row;
        size_t begin = 0;
        size_t column = 0;
        while (true) {
            ++column;
            const size_t comma = line.find(',', begin);
            const size_t end = comma == std::string::npos ? line.size() : comma;
            const char* first = line.data() + begin;
            const char* last = line.data() + end;
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (first == last || ec != std::errc{} || ptr != last) {
                throw FormatError("'" + path.string() + "': row " + std::to_string(line_number) +
                                  ", column " + std::to_string(column) + ": not a number: '" +
                                  std::string(first, last) + "'");
            }
            row.push_back(value);
            if (comma == std::string::npos) break;
            begin = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw FormatError("'" + path.string() + "': row " + std::to_string(line_number) +
                              " has " + std::to_string(row.size()) + " cells, expected " +
                              std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw FormatError("'" + path.string() + "': no data rows");
    }

    SignalMatrix m(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
        }
    }
    return m;
}

void write_csv_matrix(const std::filesystem::path& path, const SignalMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("write_csv_matrix: empty matrix");

    std::string out;
    out.reserve(static_cast<size_t>(m.size()) * 12);
    std::array<char, 64> buf{};
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out.push_back(',');
            const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), m(r, c),
                                                 std::chars_format::general, 17);
            if (ec != std::errc{}) throw IoError("write_csv_matrix: number formatting failed");
            out.append(buf.data(), ptr);
        }
        out.push_back('\n');
    }

    std::ofstream file = open_output(path);
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw IoError("failed writing '" + path.string() + "'");
}

} // namespace bss::io
