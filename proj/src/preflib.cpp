#include "topk/preflib.hpp"

#include "topk/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace topk {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::uint64_t parse_uint(std::string_view field, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(std::string("malformed ") + what + " '" + std::string(field) + "'", line);
    }
    return value;
}

struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        const auto raw = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        lines.push_back({number, trim(raw)});
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
        ++number;
    }
    return lines;
}

DatasetBallot parse_ballot(std::string_view count_field, std::string_view ids_field, std::size_t m,
                           std::size_t line) {
    if (ids_field.find('{') != std::string_view::npos || count_field.find('{') != std::string_view::npos) {
        throw ParseError("tie groups are not supported (strict orders only)", line);
    }
    DatasetBallot ballot;
    ballot.count = parse_uint(count_field, line, "ballot count");
    if (ballot.count == 0) {
        throw ParseError("ballot count must be positive", line);
    }
    if (trim(ids_field).empty()) {
        throw ParseError("empty ballot", line);
    }
    std::vector<bool> seen(m, false);
    for (auto field : split(ids_field, ',')) {
        const auto id = parse_uint(field, line, "candidate id");
        if (id < 1 || id > m) {
            throw ParseError("candidate id " + std::to_string(id) + " out of range 1.." + std::to_string(m), line);
        }
        const auto c = static_cast<CandidateId>(id - 1);
        if (seen[c]) {
            throw ParseError("candidate " + std::to_string(id) + " appears twice in a ballot", line);
        }
        seen[c] = true;
        ballot.order.push_back(c);
    }
    return ballot;
}

bool is_modern_layout(const std::vector<Line>& lines) {
    return std::any_of(lines.begin(), lines.end(), [](const Line& l) {
        return l.text.starts_with('#') && l.text.find("NUMBER ALTERNATIVES") != std::string_view::npos;
    });
}

ElectionDataset parse_modern(const std::vector<Line>& lines) {
    ElectionDataset ds;
    std::optional<Count> declared_n;
    std::map<std::size_t, std::string> names;
    std::size_t last_line = 0;
    bool have_m = false;
    for (const auto& [number, text] : lines) {
        last_line = number;
        if (text.empty()) {
            continue;
        }
        if (text.starts_with('#')) {
            const auto body = trim(text.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) {
                continue;
            }
            const auto key = trim(body.substr(0, colon));
            const auto value = trim(body.substr(colon + 1));
            if (key == "NUMBER ALTERNATIVES") {
                ds.m = parse_uint(value, number, "candidate count");
                have_m = true;
            } else if (key == "NUMBER VOTERS") {
                declared_n = parse_uint(value, number, "voter count");
            } else if (key.starts_with("ALTERNATIVE NAME")) {
                const auto id = parse_uint(trim(key.substr(16)), number, "candidate id");
                names[id] = std::string(value);
            }
            continue;
        }
        if (!have_m) {
            throw ParseError("ballot before '# NUMBER ALTERNATIVES'", number);
        }
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("expected 'count: id,id,...'", number);
        }
        auto ballot = parse_ballot(trim(text.substr(0, colon)), text.substr(colon + 1), ds.m, number);
        ds.n += ballot.count;
        ds.ballots.push_back(std::move(ballot));
    }
    if (!have_m || ds.m == 0) {
        throw ParseError("missing '# NUMBER ALTERNATIVES'", 0);
    }
    if (declared_n && *declared_n != ds.n) {
        throw ParseError("declared " + std::to_string(*declared_n) + " voters but counts sum to " +
                             std::to_string(ds.n),
                         last_line);
    }
    ds.candidate_names.resize(ds.m);
    for (std::size_t c = 0; c < ds.m; ++c) {
        const auto it = names.find(c + 1);
        ds.candidate_names[c] = it != names.end() ? it->second : std::to_string(c + 1);
    }
    return ds;
}

ElectionDataset parse_classic(const std::vector<Line>& lines) {
    ElectionDataset ds;
    std::size_t i = 0;
    auto next_data_line = [&]() -> const Line* {
        while (i < lines.size() && (lines[i].text.empty() || lines[i].text.starts_with('#'))) {
            ++i;
        }
        return i < lines.size() ? &lines[i++] : nullptr;
    };

    const Line* header = next_data_line();
    if (header == nullptr) {
        throw ParseError("empty input", 0);
    }
    ds.m = parse_uint(header->text, header->number, "candidate count");
    if (ds.m == 0) {
        throw ParseError("candidate count must be positive", header->number);
    }
    ds.candidate_names.resize(ds.m);
    std::vector<bool> named(ds.m, false);
    for (std::size_t c = 0; c < ds.m; ++c) {
        const Line* line = next_data_line();
        if (line == nullptr) {
            throw ParseError("expected " + std::to_string(ds.m) + " candidate lines", 0);
        }
        const auto comma = line->text.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("expected 'id,name'", line->number);
        }
        const auto id = parse_uint(trim(line->text.substr(0, comma)), line->number, "candidate id");
        if (id < 1 || id > ds.m || named[id - 1]) {
            throw ParseError("bad or repeated candidate id " + std::to_string(id), line->number);
        }
        named[id - 1] = true;
        ds.candidate_names[id - 1] = std::string(trim(line->text.substr(comma + 1)));
    }

    const Line* totals = next_data_line();
    if (totals == nullptr) {
        throw ParseError("missing 'voters,sum,unique' line", 0);
    }
    const auto fields = split(totals->text, ',');
    if (fields.size() != 3) {
        throw ParseError("expected 'voters,sum,unique'", totals->number);
    }
    const auto declared_n = parse_uint(fields[0], totals->number, "voter count");
    const auto declared_sum = parse_uint(fields[1], totals->number, "vote sum");
    const auto declared_unique = parse_uint(fields[2], totals->number, "unique order count");

    while (const Line* line = next_data_line()) {
        const auto comma = line->text.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("expected 'count,id,...'", line->number);
        }
        auto ballot = parse_ballot(trim(line->text.substr(0, comma)), line->text.substr(comma + 1), ds.m,
                                   line->number);
        ds.n += ballot.count;
        ds.ballots.push_back(std::move(ballot));
    }
    if (declared_n != ds.n || declared_sum != ds.n) {
        throw ParseError("declared " + std::to_string(declared_n) + " voters (sum " + std::to_string(declared_sum) +
                             ") but counts sum to " + std::to_string(ds.n),
                         totals->number);
    }
    if (declared_unique != ds.ballots.size()) {
        throw ParseError("declared " + std::to_string(declared_unique) + " unique orders but found " +
                             std::to_string(ds.ballots.size()),
                         totals->number);
    }
    return ds;
}

std::vector<std::string> default_names(std::size_t m, std::vector<std::string> names) {
    if (names.empty()) {
        for (std::size_t c = 0; c < m; ++c) {
            names.push_back("x" + std::to_string(c + 1));
        }
    }
    if (names.size() != m) {
        throw DomainError("expected one name per candidate");
    }
    return names;
}

}  // namespace

void ElectionDataset::validate() const {
    if (m == 0 || candidate_names.size() != m) {
        throw DomainError("dataset needs m >= 1 and one name per candidate");
    }
    Count total = 0;
    for (const auto& b : ballots) {
        if (b.order.empty() || b.order.size() > m || b.count == 0) {
            throw DomainError("dataset ballot must be non-empty with a positive count");
        }
        std::vector<bool> seen(m, false);
        for (CandidateId c : b.order) {
            if (c >= m || seen[c]) {
                throw DomainError("dataset ballot has a repeated or out-of-range candidate");
            }
            seen[c] = true;
        }
        total += b.count;
    }
    if (total != n || n == 0) {
        throw DomainError("dataset voter count does not match ballot counts");
    }
}

bool ElectionDataset::is_complete() const {
    return std::all_of(ballots.begin(), ballots.end(), [this](const DatasetBallot& b) { return b.order.size() + 1 >= m; });
}

ElectionDataset parse_preflib(std::string_view text) {
    const auto lines = split_lines(text);
    ElectionDataset ds = is_modern_layout(lines) ? parse_modern(lines) : parse_classic(lines);
    if (ds.n == 0) {
        throw ParseError("no ballots", 0);
    }
    return ds;
}

ElectionDataset parse_preflib(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_preflib(buffer.str());
}

ElectionDataset load_preflib(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string(), 0);
    }
    return parse_preflib(in);
}

std::string serialize_classic(const ElectionDataset& ds) {
    std::ostringstream out;
    out << ds.m << '\n';
    for (std::size_t c = 0; c < ds.m; ++c) {
        out << c + 1 << ',' << ds.candidate_names[c] << '\n';
    }
    out << ds.n << ',' << ds.n << ',' << ds.ballots.size() << '\n';
    for (const auto& b : ds.ballots) {
        out << b.count;
        for (CandidateId c : b.order) {
            out << ',' << c + 1;
        }
        out << '\n';
    }
    return out.str();
}

ElectionDataset dataset_from_profile(const Profile& profile, std::vector<std::string> names) {
    ElectionDataset ds;
    ds.m = profile.num_candidates();
    ds.candidate_names = default_names(ds.m, std::move(names));
    for (const auto& e : profile.entries()) {
        const auto order = e.ballot.order();
        ds.ballots.push_back({{order.begin(), order.end()}, e.count});
    }
    ds.n = profile.num_voters();
    return ds;
}

ElectionDataset dataset_from_topk(const TopKProfile& topk, std::vector<std::string> names) {
    ElectionDataset ds;
    ds.m = topk.num_candidates();
    ds.candidate_names = default_names(ds.m, std::move(names));
    for (const auto& e : topk.entries()) {
        const auto order = e.ballot.order();
        ds.ballots.push_back({{order.begin(), order.end()}, e.count});
    }
    ds.n = topk.num_voters();
    return ds;
}

Profile dataset_to_profile(const ElectionDataset& ds) {
    ds.validate();
    if (!ds.is_complete()) {
        throw DomainError("dataset contains incomplete ballots; use a top-k rule");
    }
    std::vector<Profile::Entry> entries;
    entries.reserve(ds.ballots.size());
    for (const auto& b : ds.ballots) {
        auto order = b.order;
        if (order.size() + 1 == ds.m) {
            std::vector<bool> seen(ds.m, false);
            for (CandidateId c : order) {
                seen[c] = true;
            }
            order.push_back(static_cast<CandidateId>(std::find(seen.begin(), seen.end(), false) - seen.begin()));
        }
        entries.push_back({Ranking(std::move(order)), b.count});
    }
    return Profile(ds.m, std::move(entries));
}

ElectionDataset resample(const ElectionDataset& ds, Count n_star, Rng& rng, SamplingMode mode) {
    if (n_star < 1 || (mode == SamplingMode::without_replacement && n_star > ds.n)) {
        throw DomainError("resample size " + std::to_string(n_star) + " outside [1, " + std::to_string(ds.n) + "]");
    }
    // Voter v belongs to ballot type t iff prefix[t] <= v < prefix[t + 1].
    std::vector<Count> prefix(ds.ballots.size() + 1, 0);
    for (std::size_t t = 0; t < ds.ballots.size(); ++t) {
        prefix[t + 1] = prefix[t] + ds.ballots[t].count;
    }
    std::vector<Count> drawn(ds.ballots.size(), 0);
    auto record = [&](Count voter) {
        const auto it = std::upper_bound(prefix.begin(), prefix.end(), voter);
        ++drawn[static_cast<std::size_t>(it - prefix.begin()) - 1];
    };
    if (mode == SamplingMode::with_replacement) {
        for (Count i = 0; i < n_star; ++i) {
            record(rng.uniform_below(ds.n));
        }
    } else {
        // Floyd's algorithm: a uniform n_star-subset of [0, n).
        std::unordered_set<Count> chosen;
        chosen.reserve(n_star * 2);
        for (Count j = ds.n - n_star; j < ds.n; ++j) {
            const Count t = rng.uniform_below(j + 1);
            const Count pick = chosen.contains(t) ? j : t;
            chosen.insert(pick);
            record(pick);
        }
    }
    ElectionDataset out;
    out.m = ds.m;
    out.candidate_names = ds.candidate_names;
    out.n = n_star;
    for (std::size_t t = 0; t < ds.ballots.size(); ++t) {
        if (drawn[t] != 0) {
            out.ballots.push_back({ds.ballots[t].order, drawn[t]});
        }
    }
    return out;
}

TopKProfile effective_truncate(const ElectionDataset& ds, std::size_t k) {
    if (k < 1 || k + 1 > ds.m) {
        throw DomainError("truncation level k=" + std::to_string(k) + " outside [1, m-1]");
    }
    std::map<std::vector<CandidateId>, Count> merged;
    for (const auto& b : ds.ballots) {
        const std::size_t len = std::min(k, b.order.size());
        merged[std::vector<CandidateId>(b.order.begin(), b.order.begin() + static_cast<std::ptrdiff_t>(len))] +=
            b.count;
    }
    std::vector<TopKProfile::Entry> entries;
    entries.reserve(merged.size());
    for (auto& [prefix, count] : merged) {
        entries.push_back({TopKBallot(prefix, k, ds.m), count});
    }
    return TopKProfile(ds.m, k, std::move(entries));
}

}  // namespace topk
