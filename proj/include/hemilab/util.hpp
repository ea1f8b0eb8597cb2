#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hemilab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// A simplex or vertex was not a member of the complex it was queried against.
struct MembershipError : Error {
    using Error::Error;
};
/// Malformed or inconsistent input (id collisions, bad weights, bad files).
struct InputError : Error {
    using Error::Error;
};
/// An operation was invoked outside its stated precondition.
struct PreconditionError : Error {
    using Error::Error;
};
/// Out-of-domain arguments for a metric computation (antipodal, coincident).
struct DomainError : Error {
    using Error::Error;
};
/// A configured size bound would be exceeded.
struct SizeBoundError : Error {
    using Error::Error;
};
/// An exhaustive or steered search failed to produce a guaranteed witness.
struct SearchError : Error {
    using Error::Error;
};

/// Sign of an exact inner product.
enum class Sign { NEG = -1, ZERO = 0, POS = 1 };

/// Trichotomy of a distance (or cosine) against a threshold.
enum class Tri { LT = -1, EQ = 0, GT = 1 };

inline const char* to_string(Tri t)
{
    switch (t) {
        case Tri::LT: return "LT";
        case Tri::EQ: return "EQ";
        case Tri::GT: return "GT";
    }
    return "?";
}

inline Sign sign_of(const Rat& x)
{
    if (x > 0) return Sign::POS;
    if (x < 0) return Sign::NEG;
    return Sign::ZERO;
}

/// Parse a rational from "a/b" or "a".
inline Rat parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::exception&) {
        throw InputError("cannot parse rational: " + s);
    }
}

inline std::string rational_to_string(const Rat& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

/// FNV-1a over a byte string; used for content-addressed cache keys.
inline std::string fnv1a_hex(const std::string& data)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

/// Chunked parallel map over [0, n). jobs <= 1 runs inline. Exceptions from
/// workers are rethrown (first one wins). Results must be written by the
/// callback into preallocated storage to keep output order deterministic.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn)
{
    if (n == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (jobs <= 0) jobs = hw ? static_cast<int>(hw) : 1;
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mx;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mx);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace hemilab
