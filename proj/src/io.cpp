#include "tte/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tte/error.hpp"

namespace tte::io {
namespace {

using nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(
               std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string const& field, std::size_t line)
{
    try
    {
        std::size_t used = 0;
        double const v = std::stod(field, &used);
        if (used == field.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw ValidationError("line " + std::to_string(line) + ": '" + field
                          + "' is not a number");
}

int parse_int(std::string const& field, std::size_t line)
{
    try
    {
        std::size_t used = 0;
        int const v = std::stoi(field, &used);
        if (used == field.size())
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw ValidationError("line " + std::to_string(line) + ": '" + field
                          + "' is not an integer");
}

// "key,value" header line
std::string header_value(std::string const& line,
                         std::string_view key,
                         std::size_t line_no)
{
    auto const comma = line.find(',');
    if (comma == std::string::npos || trim(line.substr(0, comma)) != key)
    {
        throw ValidationError("line " + std::to_string(line_no)
                              + ": expected header '" + std::string(key)
                              + ",<value>'");
    }
    return trim(line.substr(comma + 1));
}

json row_json(CellResult const& cell)
{
    auto const& c = cell.config;
    json row = {
        {"method", std::string(to_string(c.method))},
        {"n", c.n},
        {"lambda", c.lambda_true},
        {"T", c.truncation_time},
        {"seed", c.seed},
    };
    if (cell.summary)
    {
        json s = to_json(*cell.summary);
        row.update(s);
    }
    else
    {
        row["error"] = cell.error;
    }
    return row;
}

}  // namespace

CensoredSample parse_sample_json(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        throw ValidationError("line " + std::to_string(line_of_offset(text, e.byte))
                              + ": malformed JSON sample (" + e.what() + ")");
    }
    if (!doc.is_object())
        throw ValidationError("line 1: sample JSON must be an object");
    for (char const* key : {"n", "T", "failures"})
    {
        if (!doc.contains(key))
        {
            throw ValidationError(std::string("sample JSON is missing the '")
                                  + key + "' field");
        }
    }
    if (!doc["n"].is_number_integer())
        throw ValidationError("sample JSON field 'n' must be an integer");
    if (!doc["T"].is_number())
        throw ValidationError("sample JSON field 'T' must be a number");
    if (!doc["failures"].is_array())
        throw ValidationError("sample JSON field 'failures' must be an array");
    std::vector<double> failures;
    for (auto const& v : doc["failures"])
    {
        if (!v.is_number())
            throw ValidationError("sample JSON failures must be numbers");
        failures.push_back(v.get<double>());
    }
    return CensoredSample(doc["n"].get<int>(), doc["T"].get<double>(),
                          std::move(failures));
}

CensoredSample parse_sample_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    int n = 0;
    double t = 0;
    int headers_seen = 0;
    std::vector<double> failures;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string const line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        if (headers_seen == 0)
        {
            n = parse_int(header_value(line, "n", line_no), line_no);
            ++headers_seen;
        }
        else if (headers_seen == 1)
        {
            t = parse_double(header_value(line, "T", line_no), line_no);
            ++headers_seen;
        }
        else
        {
            failures.push_back(parse_double(line, line_no));
        }
    }
    if (headers_seen < 2)
        throw ValidationError("sample CSV needs 'n,<value>' and 'T,<value>' headers");
    return CensoredSample(n, t, std::move(failures));
}

CensoredSample read_sample_file(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read sample file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto const ext = path.extension().string();
    if (ext == ".json")
        return parse_sample_json(buffer.str());
    if (ext == ".csv")
        return parse_sample_csv(buffer.str());
    throw ValidationError("sample file '" + path.string()
                          + "' must end in .json or .csv");
}

std::string format_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7g", value);
    return buf;
}

nlohmann::json to_json(IntervalResult const& interval)
{
    return {
        {"lower", interval.lower},
        {"upper", interval.upper},
        {"level", interval.level},
        {"method", std::string(to_string(interval.method))},
        {"sided", std::string(to_string(interval.sided))},
    };
}

IntervalResult interval_from_json(nlohmann::json const& j)
{
    return {j.at("lower").get<double>(),
            j.at("upper").get<double>(),
            j.at("level").get<double>(),
            method_from_string(j.at("method").get<std::string>()),
            sidedness_from_string(j.at("sided").get<std::string>())};
}

nlohmann::json to_json(SimSummary const& s)
{
    return {
        {"bias", s.bias},
        {"mse", s.mse},
        {"avg_length", s.avg_length},
        {"coverage_pct", s.coverage_pct},
        {"effective_replications", s.effective_replications},
        {"d_zero_count", s.d_zero_count},
        {"no_root_count", s.no_root_count},
    };
}

SimSummary summary_from_json(nlohmann::json const& j)
{
    SimSummary s;
    s.bias = j.at("bias").get<double>();
    s.mse = j.at("mse").get<double>();
    s.avg_length = j.at("avg_length").get<double>();
    s.coverage_pct = j.at("coverage_pct").get<double>();
    s.effective_replications = j.at("effective_replications").get<int>();
    s.d_zero_count = j.at("d_zero_count").get<int>();
    s.no_root_count = j.at("no_root_count").get<int>();
    return s;
}

void write_results_csv(std::ostream& out, std::span<CellResult const> cells)
{
    out << kResultColumns << '\n';
    for (auto const& cell : cells)
    {
        if (!cell.summary)
            continue;
        auto const& c = cell.config;
        auto const& s = *cell.summary;
        out << to_string(c.method) << ',' << c.n << ','
            << format_number(c.lambda_true) << ','
            << format_number(c.truncation_time) << ',' << format_number(s.bias)
            << ',' << format_number(s.mse) << ',' << format_number(s.avg_length)
            << ',' << format_number(s.coverage_pct) << ','
            << s.effective_replications << ',' << s.d_zero_count << ','
            << s.no_root_count << ',' << c.seed << '\n';
    }
}

void write_results_json(std::ostream& out, std::span<CellResult const> cells)
{
    json rows = json::array();
    for (auto const& cell : cells)
        rows.push_back(row_json(cell));
    out << rows.dump(2) << '\n';
}

}  // namespace tte::io
