// SPDX-License-Identifier: Apache-2.0
//
// wisim: radar sensing channel simulator and micro-Doppler toolkit
// Copyright (C) 2026 The wisim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "wisim/io.hpp"
#include "wisim/errors.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wisim {

namespace {

using nlohmann::json;

void put_le32(std::string &buf, float f)
{
    std::uint32_t u = std::bit_cast<std::uint32_t>(f);
    for (int b = 0; b < 4; ++b)
        buf.push_back(static_cast<char>((u >> (8 * b)) & 0xffu));
}

float get_le32(const unsigned char *p)
{
    std::uint32_t u = 0;
    for (int b = 0; b < 4; ++b)
        u |= static_cast<std::uint32_t>(p[b]) << (8 * b);
    return std::bit_cast<float>(u);
}

std::string trim(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
        ++i;
    return s.substr(i);
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos)
        s += ".0";
    return s;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string &path, const std::string &bytes)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw IoError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

void write_iq(const std::string &path, const IQMatrix &X, const IqHeader &header)
{
    std::string body;
    body.reserve(static_cast<std::size_t>(X.size()) * 8);
    for (Eigen::Index i = 0; i < X.cols(); ++i)
        for (Eigen::Index n = 0; n < X.rows(); ++n)
        {
            put_le32(body, static_cast<float>(X(n, i).real()));
            put_le32(body, static_cast<float>(X(n, i).imag()));
        }
    write_file_atomic(path, body);

    json j = {{"L", static_cast<int>(X.rows())}, {"C", static_cast<int>(X.cols())},
              {"f_s", header.f_s}, {"f_c", header.f_c}, {"T", header.T}, {"T0", header.T0},
              {"scenario_id", header.scenario_id}, {"seed", header.seed}};
    if (header.bandwidth)
        j["B_W"] = *header.bandwidth;
    write_file_atomic(path + ".json", j.dump(2) + "\n");
}

IqFile read_iq(const std::string &path)
{
    IqFile f;
    json j;
    try
    {
        j = json::parse(read_file(path + ".json"));
        f.header.L = j.at("L").get<int>();
        f.header.C = j.at("C").get<int>();
        f.header.f_s = j.at("f_s").get<double>();
        f.header.f_c = j.at("f_c").get<double>();
        f.header.T = j.at("T").get<double>();
        f.header.T0 = j.at("T0").get<double>();
        f.header.scenario_id = j.at("scenario_id").get<std::string>();
        f.header.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("B_W"))
            f.header.bandwidth = j.at("B_W").get<double>();
    }
    catch (const json::exception &e)
    {
        throw ParseError("malformed IQ header " + path + ".json: " + e.what());
    }
    if (f.header.L < 1 || f.header.C < 1)
        throw ParseError("IQ header has non-positive dimensions");

    const std::string body = read_file(path);
    const std::size_t expected = static_cast<std::size_t>(f.header.L) * f.header.C * 8;
    if (body.size() != expected)
        throw ParseError("IQ body of " + path + " has " + std::to_string(body.size()) + " bytes, header implies " +
                         std::to_string(expected));
    f.samples.resize(f.header.L, f.header.C);
    const auto *p = reinterpret_cast<const unsigned char *>(body.data());
    for (int i = 0; i < f.header.C; ++i)
        for (int n = 0; n < f.header.L; ++n, p += 8)
            f.samples(n, i) = cplx(get_le32(p), get_le32(p + 4));
    return f;
}

std::string encode_pgm(const GrayImage &img)
{
    std::string out = "P5\n" + std::to_string(img.cols) + " " + std::to_string(img.rows) + "\n255\n";
    out.reserve(out.size() + img.pixels.size());
    for (int r = img.rows - 1; r >= 0; --r)
        out.append(reinterpret_cast<const char *>(img.pixels.data()) + static_cast<std::size_t>(r) * img.cols,
                   static_cast<std::size_t>(img.cols));
    return out;
}

void write_pgm(const std::string &path, const GrayImage &img)
{
    write_file_atomic(path, encode_pgm(img));
}

GrayImage read_pgm(const std::string &path)
{
    const std::string data = read_file(path);
    std::size_t pos = 0;
    auto token = [&]() {
        for (;;)
        {
            while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos])))
                ++pos;
            if (pos < data.size() && data[pos] == '#')
            {
                while (pos < data.size() && data[pos] != '\n')
                    ++pos;
                continue;
            }
            break;
        }
        std::size_t start = pos;
        while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos])))
            ++pos;
        return data.substr(start, pos - start);
    };
    if (token() != "P5")
        throw ParseError("not a binary PGM (P5): " + path);
    GrayImage img;
    try
    {
        img.cols = std::stoi(token());
        img.rows = std::stoi(token());
        if (std::stoi(token()) != 255)
            throw ParseError("only maxval 255 PGM files are supported: " + path);
    }
    catch (const std::logic_error &)
    {
        throw ParseError("malformed PGM header: " + path);
    }
    ++pos; // single whitespace before the raster
    const std::size_t n = static_cast<std::size_t>(img.rows) * img.cols;
    if (img.rows < 1 || img.cols < 1 || data.size() < pos + n)
        throw ParseError("truncated PGM raster: " + path);
    img.pixels.resize(n);
    for (int r = 0; r < img.rows; ++r)
        std::memcpy(img.pixels.data() + static_cast<std::size_t>(img.rows - 1 - r) * img.cols,
                    data.data() + pos + static_cast<std::size_t>(r) * img.cols, static_cast<std::size_t>(img.cols));
    return img;
}

void write_pmf_csv(const std::string &path, const Pmf &pmf)
{
    std::string out = "bin_index,probability\n";
    for (int j = 0; j < pmf.bins(); ++j)
        out += std::to_string(j) + "," + format_double(pmf.probabilities[j]) + "\n";
    write_file_atomic(path, out);
}

Pmf read_pmf_csv(const std::string &path)
{
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t line_no = 0;
    Pmf pmf;
    bool header = false;
    while (std::getline(in, line))
    {
        ++line_no;
        line = trim(line);
        if (line.empty())
            continue;
        if (!header)
        {
            if (line != "bin_index,probability")
                throw ParseError("expected header 'bin_index,probability' in " + path, line_no);
            header = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected 'bin_index,probability' row in " + path, line_no);
        try
        {
            std::size_t used = 0;
            int idx = std::stoi(line.substr(0, comma), &used);
            std::string pstr = line.substr(comma + 1);
            double p = std::stod(pstr, &used);
            if (used != pstr.size() || idx != pmf.bins() || !(p >= 0.0))
                throw std::invalid_argument("bad row");
            pmf.probabilities.push_back(p);
        }
        catch (const std::logic_error &)
        {
            throw ParseError("malformed pmf row '" + line + "' in " + path, line_no);
        }
    }
    if (pmf.probabilities.empty())
        throw ParseError("pmf file has no rows: " + path);
    double sum = 0.0;
    for (double p : pmf.probabilities)
        sum += p;
    if (std::abs(sum - 1.0) > 1e-6)
        throw ParseError("pmf in " + path + " does not sum to 1 (sum " + format_double(sum) + ")");
    // Rows written by this library already sum to 1 and round-trip bit-exactly;
    // hand-edited files within the tolerance are renormalized.
    if (std::abs(sum - 1.0) > 1e-12)
        for (double &p : pmf.probabilities)
            p /= sum;
    return pmf;
}

void write_spectrogram_csv(const std::string &path, const Spectrogram &S)
{
    std::string out = "freq_hz";
    for (double t : S.time_axis)
        out += "," + format_double(t);
    out += "\n";
    for (int k = 0; k < S.bins(); ++k)
    {
        out += format_double(S.freq_axis[k]);
        for (int l = 0; l < S.steps(); ++l)
            out += "," + format_double(S.magnitudes_db(k, l));
        out += "\n";
    }
    write_file_atomic(path, out);
}

} // namespace wisim
