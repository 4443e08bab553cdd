#include "scambait/time_utils.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <thread>

#include "scambait/clock.hpp"

namespace scambait {

namespace {

constexpr std::array<const char*, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

constexpr std::array<const char*, 7> kWeekdays = {
    "Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};

struct CivilTime {
    int year, month, day, hour, minute, second;
};

CivilTime split(Instant t) {
    using namespace std::chrono;
    const auto dp = floor<days>(t);
    const year_month_day ymd{dp};
    const auto tod = t - dp;
    const auto h = duration_cast<hours>(tod);
    const auto m = duration_cast<minutes>(tod - h);
    const auto s = duration_cast<seconds>(tod - h - m);
    return {int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day())),
            int(h.count()), int(m.count()), int(s.count())};
}

std::optional<Instant> make_instant(int y, int mo, int d, int h, int mi, int s,
                                    int offset_minutes) {
    using namespace std::chrono;
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) return std::nullopt;
    const year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    Instant t = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
    t -= minutes{offset_minutes};
    return t;
}

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = text[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

} // namespace

std::string format_iso8601(Instant t) {
    const CivilTime c = split(t);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  c.year, c.month, c.day, c.hour, c.minute, c.second);
    return buf;
}

std::optional<Instant> parse_iso8601(std::string_view text) {
    // YYYY-MM-DDTHH:MM:SSZ, also accepts a bare date (midnight) and "+00:00".
    int y, mo, d, h = 0, mi = 0, s = 0;
    if (!read_int(text, 0, 4, y) || !read_int(text, 5, 2, mo) || !read_int(text, 8, 2, d))
        return std::nullopt;
    if (text.size() < 5 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (text.size() == 10) return make_instant(y, mo, d, 0, 0, 0, 0);
    if (text.size() < 19 || (text[10] != 'T' && text[10] != ' ')) return std::nullopt;
    if (!read_int(text, 11, 2, h) || !read_int(text, 14, 2, mi) || !read_int(text, 17, 2, s))
        return std::nullopt;
    if (text[13] != ':' || text[16] != ':') return std::nullopt;
    std::string_view rest = text.substr(19);
    if (rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000")
        return make_instant(y, mo, d, h, mi, s, 0);
    if ((rest[0] == '+' || rest[0] == '-') && rest.size() >= 5) {
        int oh = 0, om = 0;
        std::size_t mpos = (rest.size() >= 6 && rest[3] == ':') ? 4 : 3;
        if (!read_int(rest, 1, 2, oh) || !read_int(rest, mpos, 2, om)) return std::nullopt;
        int offset = oh * 60 + om;
        if (rest[0] == '-') offset = -offset;
        return make_instant(y, mo, d, h, mi, s, offset);
    }
    return std::nullopt;
}

std::string format_rfc5322_date(Instant t) {
    using namespace std::chrono;
    const CivilTime c = split(t);
    const weekday wd{floor<days>(t)};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s, %d %s %04d %02d:%02d:%02d +0000",
                  kWeekdays[wd.c_encoding()], c.day, kMonths[c.month - 1], c.year,
                  c.hour, c.minute, c.second);
    return buf;
}

std::optional<Instant> parse_rfc5322_date(std::string_view text) {
    // [Sun, ]9 Apr 2023 10:30:00 +0000  — zone may also be a name; we only
    // honour numeric offsets and treat anything else as UTC.
    auto skip_ws = [&](std::size_t p) {
        while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
        return p;
    };
    std::size_t pos = skip_ws(0);
    if (auto comma = text.find(','); comma != std::string_view::npos && comma < 5)
        pos = skip_ws(comma + 1);

    auto read_num = [&](int& out) -> bool {
        pos = skip_ws(pos);
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            return false;
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        out = v;
        return true;
    };

    int d, y, h, mi, s = 0;
    if (!read_num(d)) return std::nullopt;
    pos = skip_ws(pos);
    int mo = 0;
    for (std::size_t i = 0; i < kMonths.size(); ++i) {
        if (text.substr(pos, 3) == kMonths[i]) {
            mo = static_cast<int>(i) + 1;
            break;
        }
    }
    if (mo == 0) return std::nullopt;
    pos += 3;
    if (!read_num(y)) return std::nullopt;
    if (y < 100) y += (y < 50) ? 2000 : 1900;
    if (!read_num(h)) return std::nullopt;
    if (pos >= text.size() || text[pos] != ':') return std::nullopt;
    ++pos;
    if (!read_num(mi)) return std::nullopt;
    if (pos < text.size() && text[pos] == ':') {
        ++pos;
        if (!read_num(s)) return std::nullopt;
    }
    pos = skip_ws(pos);
    int offset = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        const bool neg = text[pos] == '-';
        int hhmm;
        ++pos;
        if (read_num(hhmm)) {
            offset = (hhmm / 100) * 60 + (hhmm % 100);
            if (neg) offset = -offset;
        }
    }
    return make_instant(y, mo, d, h, mi, s, offset);
}

Instant SystemClock::now() const {
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

void SystemClock::sleep(std::chrono::seconds duration) {
    std::this_thread::sleep_for(duration);
}

} // namespace scambait
