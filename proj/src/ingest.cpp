#include "tp3/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ctime>

namespace tp3 {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// Accepts either plain epoch seconds or the Foursquare textual form,
// e.g. "Tue Apr 03 18:00:09 +0000 2012".
bool parse_timestamp(const std::string& s, std::int64_t& out) {
    if (all_digits(s)) {
        out = std::stoll(s);
        return true;
    }
    std::tm tm{};
    const char* rest = strptime(s.c_str(), "%a %b %d %H:%M:%S %z %Y", &tm);
    if (rest == nullptr || *rest != '\0') return false;
    out = static_cast<std::int64_t>(timegm(&tm)) - tm.tm_gmtoff;
    return true;
}

} // namespace

ParseResult parse_checkins(std::istream& in, CheckinFormat format) {
    const char sep = format == CheckinFormat::foursquare_tsv ? '\t' : ',';
    ParseResult out;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = format == CheckinFormat::csv;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split(line, sep);
        if (fields.size() != 8) {
            out.errors.push_back({line_no, "expected 8 columns, got " + std::to_string(fields.size())});
            continue;
        }
        Report r;
        r.user_id = fields[0];
        r.payload = fields[3];
        if (!parse_double(fields[4], r.lat) || !parse_double(fields[5], r.lon)) {
            out.errors.push_back({line_no, "unparseable lat/lon"});
            continue;
        }
        if (!parse_timestamp(fields[7], r.timestamp)) {
            out.errors.push_back({line_no, "unparseable timestamp"});
            continue;
        }
        if (r.lat < -90.0 || r.lat > 90.0) {
            out.errors.push_back({line_no, "lat outside [-90, 90]"});
            continue;
        }
        if (r.lon < -180.0 || r.lon > 180.0) {
            out.errors.push_back({line_no, "lon outside [-180, 180]"});
            continue;
        }
        if (r.timestamp < 0) {
            out.errors.push_back({line_no, "timestamp before epoch"});
            continue;
        }
        out.reports.push_back(std::move(r));
    }
    return out;
}

std::vector<Trajectory> segment_trajectories(const std::vector<Report>& reports,
                                             std::int64_t window_s) {
    std::vector<Trajectory> out;
    if (reports.empty()) return out;
    std::vector<Report> sorted = reports;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Report& a, const Report& b) { return a.timestamp < b.timestamp; });
    const std::string& user = sorted.front().user_id;
    Trajectory cur;
    cur.user_id = user;
    auto flush = [&]() {
        if (cur.reports.empty()) return;
        cur.traj_id = user + "#" + std::to_string(out.size());
        out.push_back(std::move(cur));
        cur = Trajectory{};
        cur.user_id = user;
    };
    for (const auto& r : sorted) {
        if (!cur.reports.empty() && r.timestamp - cur.reports.back().timestamp > window_s) flush();
        cur.reports.push_back(r);
    }
    flush();
    return out;
}

} // namespace tp3
