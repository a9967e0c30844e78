#pragma once
// Check reports and their renderings. Witness values are canonical scalar
// strings, so two runs agree byte-for-byte once durations are dropped.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mirrorcert/hermitian.hpp"

namespace mirrorcert {

enum class Status { Pass, Fail, Error };
enum class Tier { Fast, Long };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Error: return "error";
    }
    return "error";
}

inline const char* tier_name(Tier t) { return t == Tier::Fast ? "fast" : "long"; }

inline std::optional<Tier> parse_tier(std::string_view s) {
    if (s == "fast") return Tier::Fast;
    if (s == "long") return Tier::Long;
    return std::nullopt;
}

inline std::string render(const HermVec& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ",";
        s += render(v[k]);
    }
    return s + ")";
}

struct Witness {
    std::string label;
    std::string value;
    friend bool operator==(const Witness& a, const Witness& b) { return a.label == b.label && a.value == b.value; }
    friend bool operator<(const Witness& a, const Witness& b) {
        return a.label != b.label ? a.label < b.label : a.value < b.value;
    }
};

struct CheckReport {
    std::string id;
    Status status = Status::Pass;
    std::vector<Witness> witnesses;
    std::map<std::string, std::int64_t> counts;
    std::vector<std::string> notes;
    std::int64_t duration_ms = 0;

    bool passed() const { return status == Status::Pass; }
};

// Collects sub-assertions into a report. A failed assertion flips the status
// and leaves a witness naming the violated relation.
class Recorder {
public:
    explicit Recorder(CheckReport& r) : r_(r) {}

    void witness(std::string label, std::string value) { r_.witnesses.push_back({std::move(label), std::move(value)}); }
    void note(std::string text) { r_.notes.push_back(std::move(text)); }
    void count(const std::string& name, std::int64_t v) { r_.counts[name] = v; }

    bool expect(bool ok, const std::string& label, const std::string& detail = "violated") {
        if (!ok) fail(label, detail);
        return ok;
    }

    template <class T>
    bool expect_eq(const std::string& label, const T& got, const T& want) {
        if (got == want) return true;
        fail(label, render_any(got) + " != " + render_any(want));
        return false;
    }

    bool expect_lt(const std::string& label, const RealQuad& a, const RealQuad& b) {
        if (a < b) return true;
        fail(label, render(a) + " >= " + render(b));
        return false;
    }

    bool expect_count(const std::string& name, std::int64_t got, std::int64_t want) {
        count(name, got);
        return expect_eq(name, got, want);
    }

    void fail(const std::string& label, const std::string& detail) {
        if (r_.status == Status::Pass) r_.status = Status::Fail;
        witness(label, detail);
    }

    bool ok() const { return r_.status == Status::Pass; }

private:
    static std::string render_any(const CycScalar& x) { return render(x); }
    static std::string render_any(const RealQuad& x) { return render(x); }
    static std::string render_any(const HermVec& x) { return render(x); }
    static std::string render_any(const std::string& x) { return x; }
    static std::string render_any(const Rat& x) { return render_rat(x); }
    template <class T>
    static std::string render_any(const T& x) {
        std::ostringstream os;
        os << x;
        return os.str();
    }

    CheckReport& r_;
};

// ---------------------------------------------------------------------------

inline constexpr const char* kReportSchema = "1";

inline nlohmann::ordered_json to_json(const CheckReport& r, bool with_duration = true) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["id"] = r.id;
    j["status"] = status_name(r.status);
    auto w = nlohmann::ordered_json::array();
    for (const auto& x : r.witnesses) w.push_back({{"label", x.label}, {"value", x.value}});
    j["witnesses"] = w;
    auto c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.counts) c[k] = v;
    j["counts"] = c;
    j["notes"] = r.notes;
    if (with_duration) j["duration_ms"] = r.duration_ms;
    return j;
}

inline std::string render_json(const std::vector<CheckReport>& rs, bool with_duration = true) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& r : rs) a.push_back(to_json(r, with_duration));
    return a.dump(2) + "\n";
}

inline std::string render_text(const CheckReport& r) {
    std::ostringstream os;
    os << "[" << status_name(r.status) << "] " << r.id << " (" << r.duration_ms << " ms)\n";
    for (const auto& [k, v] : r.counts) os << "    count " << k << " = " << v << "\n";
    for (const auto& w : r.witnesses) os << "    " << w.label << ": " << w.value << "\n";
    for (const auto& n : r.notes) os << "    note: " << n << "\n";
    return os.str();
}

}  // namespace mirrorcert
