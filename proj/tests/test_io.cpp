#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "bss/error.hpp"
#include "bss/io.hpp"
#include "bss/random.hpp"
#include "test_util.hpp"

using namespace bss::io;

namespace {

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void push_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v & 0xff));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void push_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void push_tag(std::vector<std::uint8_t>& b, const char (&tag)[5]) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(tag[i]));
}

// Mono 16-bit WAV with an odd-sized junk chunk between fmt and data, to
// exercise chunk skipping and the RIFF pad byte.
std::vector<std::uint8_t> tiny_wav() {
    std::vector<std::uint8_t> b;
    push_tag(b, "RIFF");
    push_u32(b, 4 + 24 + 12 + 12);
    push_tag(b, "WAVE");
    push_tag(b, "fmt ");
    push_u32(b, 16);
    push_u16(b, 1);        // PCM
    push_u16(b, 1);        // channels
    push_u32(b, 44100);
    push_u32(b, 88200);    // byte rate
    push_u16(b, 2);        // block align
    push_u16(b, 16);       // bits
    push_tag(b, "LIST");
    push_u32(b, 3);
    b.push_back('a');
    b.push_back('b');
    b.push_back('c');
    b.push_back(0);        // pad byte for the odd chunk size
    push_tag(b, "data");
    push_u32(b, 4);
    push_u16(b, 0x0000);   // 0.0
    push_u16(b, 0x4000);   // 16384 -> 0.5
    return b;
}

} // namespace

TEST_CASE("read_wav parses a hand-assembled file") {
    testutil::TempDir dir("bss-io-wav");
    const auto path = dir.file("tiny.wav");
    write_bytes(path, tiny_wav());

    const AudioBuffer audio = read_wav(path);
    CHECK(audio.sample_rate == 44100);
    CHECK(audio.signal.rows() == 1);
    CHECK(audio.signal.cols() == 2);
    CHECK(audio.signal(0, 0) == 0.0);
    CHECK(audio.signal(0, 1) == 0.5);
}

TEST_CASE("wav round trip is bit-exact on the 16-bit grid") {
    testutil::TempDir dir("bss-io-wav-rt");
    const auto path = dir.file("grid.wav");

    bss::Rng rng(61);
    AudioBuffer out;
    out.sample_rate = 44100;
    out.signal.resize(2, 500);
    for (Eigen::Index c = 0; c < 500; ++c) {
        for (Eigen::Index r = 0; r < 2; ++r) {
            const int q = static_cast<int>(rng() % 65536) - 32768;
            out.signal(r, c) = q / 32768.0;
        }
    }
    out.signal(0, 0) = -1.0;            // -32768 exactly
    out.signal(1, 0) = 32767.0 / 32768.0;

    write_wav(path, out);
    const AudioBuffer in = read_wav(path);
    CHECK(in.sample_rate == 44100);
    CHECK(in.signal == out.signal);
}

TEST_CASE("write_wav clamps out-of-range values") {
    testutil::TempDir dir("bss-io-wav-clamp");
    const auto path = dir.file("clamp.wav");
    AudioBuffer out;
    out.sample_rate = 8000;
    out.signal.resize(1, 2);
    out.signal << 2.0, -2.0;
    write_wav(path, out);
    const AudioBuffer in = read_wav(path);
    CHECK(in.signal(0, 0) == 32767.0 / 32768.0);
    CHECK(in.signal(0, 1) == -1.0);
}

TEST_CASE("read_wav rejects broken files") {
    testutil::TempDir dir("bss-io-wav-bad");
    CHECK_THROWS_AS(read_wav(dir.file("missing.wav")), bss::IoError);

    auto bytes = tiny_wav();
    bytes[8] = 'X';  // corrupt the WAVE tag
    write_bytes(dir.file("notwave.wav"), bytes);
    CHECK_THROWS_AS(read_wav(dir.file("notwave.wav")), bss::FormatError);

    bytes = tiny_wav();
    bytes[20] = 3;  // format tag 3 (IEEE float), unsupported
    write_bytes(dir.file("float.wav"), bytes);
    CHECK_THROWS_AS(read_wav(dir.file("float.wav")), bss::FormatError);

    bytes = tiny_wav();
    bytes.resize(bytes.size() - 2);  // truncate the data chunk
    write_bytes(dir.file("short.wav"), bytes);
    CHECK_THROWS_AS(read_wav(dir.file("short.wav")), bss::FormatError);
}

TEST_CASE("read_pgm parses a hand-assembled file") {
    testutil::TempDir dir("bss-io-pgm");
    const auto path = dir.file("tiny.pgm");
    std::vector<std::uint8_t> b;
    for (char c : std::string("P5\n# a comment\n3 2\n255\n")) {
        b.push_back(static_cast<std::uint8_t>(c));
    }
    for (int p : {0, 128, 255, 1, 2, 3}) b.push_back(static_cast<std::uint8_t>(p));
    write_bytes(path, b);

    const ImageBuffer image = read_pgm(path);
    CHECK(image.width == 3);
    CHECK(image.height == 2);
    CHECK(image.signal.rows() == 1);
    CHECK(image.signal.cols() == 6);
    CHECK(image.signal(0, 0) == 0.0);
    CHECK(image.signal(0, 1) == 128.0 / 255.0);
    CHECK(image.signal(0, 2) == 1.0);
}

TEST_CASE("pgm round trip is bit-exact on the 8-bit grid") {
    testutil::TempDir dir("bss-io-pgm-rt");
    const auto path = dir.file("grid.pgm");

    bss::Rng rng(62);
    ImageBuffer out;
    out.width = 16;
    out.height = 8;
    out.signal.resize(1, 128);
    for (Eigen::Index i = 0; i < 128; ++i) {
        out.signal(0, i) = static_cast<double>(rng() % 256) / 255.0;
    }
    write_pgm(path, out);
    const ImageBuffer in = read_pgm(path);
    CHECK(in.width == 16);
    CHECK(in.height == 8);
    CHECK(in.signal == out.signal);
}

TEST_CASE("pgm errors") {
    testutil::TempDir dir("bss-io-pgm-bad");

    std::vector<std::uint8_t> b;
    for (char c : std::string("P2\n2 2\n255\n")) b.push_back(static_cast<std::uint8_t>(c));
    write_bytes(dir.file("ascii.pgm"), b);
    CHECK_THROWS_AS(read_pgm(dir.file("ascii.pgm")), bss::FormatError);

    b.clear();
    for (char c : std::string("P5\n2 2\n65535\n")) b.push_back(static_cast<std::uint8_t>(c));
    for (int i = 0; i < 8; ++i) b.push_back(0);
    write_bytes(dir.file("deep.pgm"), b);
    CHECK_THROWS_AS(read_pgm(dir.file("deep.pgm")), bss::FormatError);

    b.clear();
    for (char c : std::string("P5\n4 4\n255\n")) b.push_back(static_cast<std::uint8_t>(c));
    b.push_back(0);  // 1 of 16 pixels
    write_bytes(dir.file("trunc.pgm"), b);
    CHECK_THROWS_AS(read_pgm(dir.file("trunc.pgm")), bss::FormatError);

    ImageBuffer bad;
    bad.width = 2;
    bad.height = 2;
    bad.signal = bss::SignalMatrix::Zero(2, 4);
    CHECK_THROWS_AS(write_pgm(dir.file("x.pgm"), bad), std::invalid_argument);
    bad.signal = bss::SignalMatrix::Zero(1, 3);
    CHECK_THROWS_AS(write_pgm(dir.file("x.pgm"), bad), std::invalid_argument);
}

TEST_CASE("csv round trip is value-exact") {
    testutil::TempDir dir("bss-io-csv");
    const auto path = dir.file("m.csv");

    bss::Rng rng(63);
    bss::SignalMatrix m(3, 7);
    for (Eigen::Index c = 0; c < 7; ++c) {
        for (Eigen::Index r = 0; r < 3; ++r) {
            m(r, c) = testutil::gaussian(rng) * std::pow(10.0, static_cast<double>(rng() % 61) - 30.0);
        }
    }
    m(0, 0) = 0.0;
    m(1, 0) = -0.0;
    m(2, 0) = 0.1;  // not representable exactly; must still round trip

    write_csv_matrix(path, m);
    const bss::SignalMatrix back = read_csv_matrix(path);
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 7);
    CHECK(back == m);
}

TEST_CASE("csv parses plain and CRLF text") {
    testutil::TempDir dir("bss-io-csv-fmt");

    {
        std::ofstream out(dir.file("plain.csv"), std::ios::binary);
        out << "1,2\n3,4";  // no trailing newline
    }
    bss::SignalMatrix m = read_csv_matrix(dir.file("plain.csv"));
    REQUIRE(m.rows() == 2);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 1) == 4.0);

    {
        std::ofstream out(dir.file("crlf.csv"), std::ios::binary);
        out << "1,2\r\n3,4\r\n";
    }
    m = read_csv_matrix(dir.file("crlf.csv"));
    REQUIRE(m.rows() == 2);
    CHECK(m(1, 0) == 3.0);
}

TEST_CASE("csv parse errors carry row and column positions") {
    testutil::TempDir dir("bss-io-csv-bad");

    {
        std::ofstream out(dir.file("ragged.csv"), std::ios::binary);
        out << "1,2\n3\n";
    }
    CHECK_THROWS_WITH_AS(read_csv_matrix(dir.file("ragged.csv")), doctest::Contains("row 2"),
                         bss::FormatError);

    {
        std::ofstream out(dir.file("alpha.csv"), std::ios::binary);
        out << "1,two\n";
    }
    CHECK_THROWS_WITH_AS(read_csv_matrix(dir.file("alpha.csv")), doctest::Contains("column 2"),
                         bss::FormatError);

    {
        std::ofstream out(dir.file("empty.csv"), std::ios::binary);
    }
    CHECK_THROWS_AS(read_csv_matrix(dir.file("empty.csv")), bss::FormatError);
    CHECK_THROWS_AS(read_csv_matrix(dir.file("missing.csv")), bss::IoError);
}
