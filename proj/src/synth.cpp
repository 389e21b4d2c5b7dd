#include "tp3/synth.hpp"

#include "tp3/rng.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tp3 {

namespace {

const std::vector<std::string> kCategories{
    "Train Station", "Cafe", "Clothing Store", "Bookstore", "Burger Joint",
    "Mall", "Ice Cream Shop", "Park", "Gym", "Office",
    "Bar", "Museum", "Theater", "Bakery", "Pharmacy"};

struct Venue {
    double lat;
    double lon;
    std::string category;
};

} // namespace

SynthCorpus generate_corpus(const SynthSpec& spec) {
    if (spec.users < 1 || spec.groups < 1 || spec.session_len < 1 ||
        spec.session_len_min < 1 || spec.session_len_min > spec.session_len)
        throw std::invalid_argument("generate_corpus: invalid spec");
    if (spec.routine_len > spec.session_len_min)
        throw std::invalid_argument("generate_corpus: routine_len must fit in every session");

    SeededRng rng(spec.seed);

    // Disjoint group areas on a grid; 1.5x spacing keeps venue pools apart.
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spec.groups))));
    std::vector<std::vector<Venue>> group_venues(static_cast<std::size_t>(spec.groups));
    SynthCorpus corpus;
    for (int g = 0; g < spec.groups; ++g) {
        const double lat0 = spec.base_lat + (g / cols) * spec.group_extent_deg * 1.5;
        const double lon0 = spec.base_lon + (g % cols) * spec.group_extent_deg * 1.5;
        for (int v = 0; v < spec.venues_per_group; ++v) {
            Venue venue;
            venue.lat = lat0 + rng.uniform(0.0, spec.group_extent_deg);
            venue.lon = lon0 + rng.uniform(0.0, spec.group_extent_deg);
            venue.category = kCategories[static_cast<std::size_t>(v) % kCategories.size()];
            group_venues[static_cast<std::size_t>(g)].push_back(venue);
            Report poi;
            poi.user_id = "poi";
            poi.lat = venue.lat;
            poi.lon = venue.lon;
            poi.timestamp = spec.start_ts;
            poi.payload = venue.category;
            corpus.pois.push_back(std::move(poi));
        }
    }

    const std::int64_t base_total = spec.total_reports > 0 ? spec.total_reports / spec.users : 0;
    const std::int64_t remainder = spec.total_reports > 0 ? spec.total_reports % spec.users : 0;

    for (int u = 0; u < spec.users; ++u) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "u%04d", u);
        const std::string user_id = buf;
        const int g = u % spec.groups;
        const bool wanderer =
            u >= static_cast<int>((1.0 - spec.wanderer_fraction) * spec.users);
        const auto& venues = group_venues[static_cast<std::size_t>(g)];
        const double lat0 = spec.base_lat + (g / cols) * spec.group_extent_deg * 1.5;
        const double lon0 = spec.base_lon + (g % cols) * spec.group_extent_deg * 1.5;

        std::int64_t budget = spec.total_reports > 0
                                  ? base_total + (u < remainder ? 1 : 0)
                                  : static_cast<std::int64_t>(spec.sessions_per_user) * spec.session_len;
        if (budget < 1) budget = 1;

        std::int64_t session_start = spec.start_ts + rng.uniform_int(0, spec.session_gap_s / 4);
        while (budget > 0) {
            const int target =
                static_cast<int>(rng.uniform_int(spec.session_len_min, spec.session_len));
            const int len = static_cast<int>(std::min<std::int64_t>(budget, target));
            const int routine_len = wanderer ? 0 : std::min(spec.routine_len, len);
            const int offset = static_cast<int>(rng.uniform_int(0, len - routine_len));
            std::int64_t ts = session_start;
            for (int slot = 0; slot < len; ++slot) {
                Report r;
                r.user_id = user_id;
                r.timestamp = ts;
                if (slot >= offset && slot < offset + routine_len) {
                    const Venue& v = venues[static_cast<std::size_t>(slot - offset)];
                    r.lat = v.lat;
                    r.lon = v.lon;
                    r.payload = v.category;
                } else {
                    // Personal stop; fresh per slot so only the routine repeats.
                    r.lat = lat0 + rng.uniform(0.0, spec.group_extent_deg);
                    r.lon = lon0 + rng.uniform(0.0, spec.group_extent_deg);
                    r.payload = kCategories[static_cast<std::size_t>(
                        rng.uniform_int(0, static_cast<std::int64_t>(kCategories.size()) - 1))];
                }
                corpus.reports.push_back(std::move(r));
                ts += rng.uniform_int(spec.intra_gap_min_s, spec.intra_gap_max_s);
            }
            budget -= len;
            session_start += spec.session_gap_s;
        }
    }
    return corpus;
}

std::string to_foursquare_tsv(const std::vector<Report>& reports) {
    std::string out;
    out.reserve(reports.size() * 64);
    char line[256];
    for (const auto& r : reports) {
        std::snprintf(line, sizeof(line), "%s\tv0\tc0\t%s\t%.6f\t%.6f\t0\t%lld\n",
                      r.user_id.c_str(), r.payload ? r.payload->c_str() : "",
                      r.lat, r.lon, static_cast<long long>(r.timestamp));
        out += line;
    }
    return out;
}

} // namespace tp3
