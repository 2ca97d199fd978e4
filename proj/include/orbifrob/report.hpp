#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace orbifrob {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "unknown";
}

/// Outcome of one named check. `instances` counts the cases examined and
/// `witness` describes the first failing case.
struct CheckResult {
    std::string name;
    Status status = Status::pass;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string witness;
};

/// Collects instances of one check; keeps only the first witness.
class Check {
public:
    explicit Check(std::string name) { result_.name = std::move(name); }

    void pass() { ++result_.instances; }

    void fail(const std::string& witness) {
        ++result_.instances;
        if (result_.failures++ == 0) result_.witness = witness;
        result_.status = Status::fail;
    }

    /// Records one instance; the witness callback only runs on failure.
    template <class Witness>
    void expect(bool ok, Witness&& witness) {
        if (ok) {
            pass();
        } else {
            fail(witness());
        }
    }

    /// Folds in the tally of another collector for the same check, keeping
    /// this collector's witness if it already has one.
    void merge(const Check& other) {
        result_.instances += other.result_.instances;
        if (other.result_.failures > 0) {
            if (result_.failures == 0) result_.witness = other.result_.witness;
            result_.failures += other.result_.failures;
            result_.status = Status::fail;
        }
    }

    void skip(const std::string& reason) {
        result_.status = Status::skipped;
        result_.witness = reason;
    }

    bool ok() const { return result_.failures == 0; }
    const CheckResult& result() const { return result_; }

private:
    CheckResult result_;
};

/// Ordered list of check outcomes.
class Report {
public:
    Report() = default;
    explicit Report(std::string title) : title_(std::move(title)) {}

    void add(CheckResult r) { checks_.push_back(std::move(r)); }
    void add(const Check& c) { checks_.push_back(c.result()); }

    void append(const Report& other, const std::string& prefix = {}) {
        for (auto c : other.checks_) {
            c.name = prefix + c.name;
            checks_.push_back(std::move(c));
        }
    }

    const std::string& title() const { return title_; }
    const std::vector<CheckResult>& checks() const { return checks_; }

    bool passed() const {
        for (const auto& c : checks_) {
            if (c.status == Status::fail) return false;
        }
        return true;
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks_) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }

    std::string text() const {
        std::ostringstream os;
        if (!title_.empty()) os << title_ << '\n';
        for (const auto& c : checks_) {
            os << "  [" << to_string(c.status) << "] " << c.name << " (" << c.instances << " instances";
            if (c.failures > 0) os << ", " << c.failures << " failures";
            os << ")";
            if (!c.witness.empty()) os << "\n      " << (c.status == Status::skipped ? "reason: " : "witness: ") << c.witness;
            os << '\n';
        }
        os << "  overall: " << (passed() ? "PASS" : "FAIL") << '\n';
        return os.str();
    }

private:
    std::string title_;
    std::vector<CheckResult> checks_;
};

}  // namespace orbifrob
