#include "qmix/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qmix/config.hpp"

namespace qmix::cayley {

namespace {

std::uint64_t pow_checked(int q, int d) {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) {
        if (n > (std::uint64_t(1) << 62) / std::uint64_t(q))
            throw std::overflow_error("q^d exceeds 63 bits");
        n *= std::uint64_t(q);
    }
    return n;
}

bool coords_less(const zq::ZqVector& a, const zq::ZqVector& b) {
    return a.coords < b.coords;
}

void sort_elements(ConnectionSet& c) {
    std::sort(c.elements.begin(), c.elements.end(), coords_less);
}

bool contains(const ConnectionSet& c, const zq::ZqVector& v) {
    return std::binary_search(c.elements.begin(), c.elements.end(), v, coords_less);
}

std::vector<int> prime_divisors(int q) {
    std::vector<int> ps;
    int m = q;
    for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            ps.push_back(p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) ps.push_back(m);
    return ps;
}

}  // namespace

std::uint64_t ConnectionSet::vertex_count() const { return pow_checked(q, d); }

void validate_connection_set(const ConnectionSet& c) {
    if (c.q < 2) throw std::invalid_argument("connection set: q must be at least 2");
    if (c.d < 1) throw std::invalid_argument("connection set: d must be at least 1");
    for (const auto& v : c.elements) {
        if (v.q != c.q || v.dim() != c.d)
            throw std::invalid_argument("connection set: element shape mismatch");
        if (zq::hamming_weight(v) == 0)
            throw std::invalid_argument("connection set: contains the zero element");
        if (!contains(c, zq::negate(v)))
            throw std::invalid_argument("connection set: not closed under inverses");
    }
    for (std::size_t i = 1; i < c.elements.size(); ++i)
        if (c.elements[i - 1].coords == c.elements[i].coords)
            throw std::invalid_argument("connection set: duplicate element");
}

ConnectionSet make_connection_set(int q, int d, std::vector<std::vector<int>> elements) {
    ConnectionSet c;
    c.q = q;
    c.d = d;
    c.elements.reserve(elements.size());
    for (auto& row : elements) c.elements.push_back(zq::make_vector(q, std::move(row)));
    sort_elements(c);
    validate_connection_set(c);
    return c;
}

ConnectionSet connection_set_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("q") || !j.contains("d") || !j.contains("elements"))
        throw std::invalid_argument("connection set JSON: expected keys q, d, elements");
    std::vector<std::vector<int>> rows;
    for (const auto& e : j.at("elements")) rows.push_back(e.get<std::vector<int>>());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != j.at("d").get<int>())
            throw std::invalid_argument("connection set JSON: element length differs from d");
    return make_connection_set(j.at("q").get<int>(), j.at("d").get<int>(), std::move(rows));
}

std::string connection_set_to_json(const ConnectionSet& c) {
    nlohmann::json j;
    j["q"] = c.q;
    j["d"] = c.d;
    auto elems = nlohmann::json::array();
    for (const auto& v : c.elements) elems.push_back(v.coords);
    j["elements"] = std::move(elems);
    return j.dump();
}

bool is_linear(const ConnectionSet& c) {
    for (const auto& v : c.elements)
        for (int lam = 2; lam < c.q; ++lam) {
            zq::ZqVector w = zq::scale(lam, v);
            if (zq::hamming_weight(w) != 0 && !contains(c, w)) return false;
        }
    return true;
}

bool is_connected(const ConnectionSet& c) {
    for (int p : prime_divisors(c.q)) {
        // Rank over F_p of the d x |C| matrix whose columns are the elements.
        std::vector<std::vector<int>> cols;
        cols.reserve(c.elements.size());
        for (const auto& v : c.elements) {
            std::vector<int> col(v.coords.begin(), v.coords.end());
            for (int& x : col) x %= p;
            cols.push_back(std::move(col));
        }
        int rank = 0;
        for (int row = 0; row < c.d && rank < static_cast<int>(cols.size()); ++row) {
            std::size_t pivot = cols.size();
            for (std::size_t j = rank; j < cols.size(); ++j)
                if (cols[j][row] != 0) {
                    pivot = j;
                    break;
                }
            if (pivot == cols.size()) continue;
            std::swap(cols[rank], cols[pivot]);
            int inv = 1;
            while (cols[rank][row] * inv % p != 1) ++inv;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (j == std::size_t(rank) || cols[j][row] == 0) continue;
                int f = cols[j][row] * inv % p;
                for (int r = 0; r < c.d; ++r)
                    cols[j][r] = ((cols[j][r] - f * cols[rank][r]) % p + p) % p;
            }
            ++rank;
        }
        if (rank < c.d) return false;
    }
    return true;
}

ConnectionSet hamming_connection_set(int d, int q) {
    ConnectionSet c;
    c.q = q;
    c.d = d;
    for (int i = 0; i < d; ++i)
        for (int lam = 1; lam < q; ++lam) {
            zq::ZqVector v = zq::zero_vector(q, d);
            v.coords[i] = lam;
            c.elements.push_back(std::move(v));
        }
    sort_elements(c);
    validate_connection_set(c);
    return c;
}

ConnectionSet distance_connection_set(int d, int q, int r) {
    if (r < 1 || r > d) throw std::invalid_argument("distance graph: weight out of range");
    Int count = binomial(d, r) * int_pow(q - 1, r);
    if (count > Int(static_cast<unsigned long>(caps().enumeration)))
        throw CapExceeded("distance graph: element count exceeds cap");
    ConnectionSet c;
    c.q = q;
    c.d = d;
    std::vector<int> support(r);
    for (int i = 0; i < r; ++i) support[i] = i;
    while (true) {
        std::vector<int> value(r, 1);
        while (true) {
            zq::ZqVector v = zq::zero_vector(q, d);
            for (int i = 0; i < r; ++i) v.coords[support[i]] = value[i];
            c.elements.push_back(std::move(v));
            int i = 0;
            while (i < r && ++value[i] == q) value[i++] = 1;
            if (i == r) break;
        }
        // Next r-subset of [0,d) in lexicographic order.
        int i = r - 1;
        while (i >= 0 && support[i] == d - r + i) --i;
        if (i < 0) break;
        ++support[i];
        for (int j = i + 1; j < r; ++j) support[j] = support[j - 1] + 1;
    }
    sort_elements(c);
    validate_connection_set(c);
    return c;
}

ConnectionSet union_connection_set(int d, int q, const std::vector<int>& classes) {
    std::vector<int> rs = classes;
    std::sort(rs.begin(), rs.end());
    if (std::unique(rs.begin(), rs.end()) != rs.end())
        throw std::invalid_argument("union graph: repeated distance class");
    ConnectionSet c;
    c.q = q;
    c.d = d;
    for (int r : rs) {
        ConnectionSet part = distance_connection_set(d, q, r);
        c.elements.insert(c.elements.end(), part.elements.begin(), part.elements.end());
    }
    sort_elements(c);
    validate_connection_set(c);
    return c;
}

ConnectionSet quotient_connection_set(const zq::Submodule& gamma) {
    if (zq::minimum_distance(gamma) < 3)
        throw std::invalid_argument("quotient graph: minimum distance below 3, quotient is not simple");
    std::vector<std::vector<int>> check =
        zq::parity_check_original_order(zq::parity_check_matrix(gamma));
    const int r = static_cast<int>(check.size());
    if (r == 0) throw std::invalid_argument("quotient graph: submodule is the full space");
    ConnectionSet c;
    c.q = gamma.q;
    c.d = r;
    for (int j = 0; j < gamma.d; ++j) {
        zq::ZqVector col = zq::zero_vector(gamma.q, r);
        for (int i = 0; i < r; ++i) col.coords[i] = check[i][j];
        for (int lam = 1; lam < gamma.q; ++lam) c.elements.push_back(zq::scale(lam, col));
    }
    sort_elements(c);
    if (c.elements.size() != std::size_t(gamma.d) * (gamma.q - 1))
        throw std::logic_error("quotient graph: connection multiset degenerated");
    validate_connection_set(c);
    return c;
}

cyc::CycInt character_eigenvalue(const ConnectionSet& c, const zq::ZqVector& a) {
    std::vector<Int> buckets(c.q, Int(0));
    for (const auto& v : c.elements) buckets[zq::inner_product(a, v)] += 1;
    return cyc::CycInt::from_buckets(cyc::context(c.q), buckets);
}

Rat linear_eigenvalue_formula(const ConnectionSet& c, const zq::ZqVector& a) {
    long k = 0;
    for (const auto& v : c.elements)
        if (zq::inner_product(a, v) == 0) ++k;
    Rat num(Int(c.q) * k - Int(static_cast<unsigned long>(c.elements.size())));
    return num / Rat(c.q - 1);
}

std::vector<long long> integer_spectrum(const ConnectionSet& c) {
    const std::uint64_t n = c.vertex_count();
    if (n > caps().enumeration) throw CapExceeded("spectrum: vertex count exceeds cap");
    const int q = c.q;
    std::vector<long long> buckets(n * std::uint64_t(q), 0);
    for (const auto& v : c.elements) buckets[zq::encode(v) * q] = 1;
    character_transform(buckets, q, c.d, q);
    std::vector<long long> theta(n);
    for (std::uint64_t a = 0; a < n; ++a) {
        const long long* b = &buckets[a * q];
        if (q == 4) {
            if (b[1] != b[3]) throw std::domain_error("spectrum: non-integer eigenvalue");
            theta[a] = b[0] - b[2];
        } else {
            for (int j = 2; j < q; ++j)
                if (b[j] != b[1]) throw std::domain_error("spectrum: non-integer eigenvalue");
            theta[a] = b[0] - b[1];
        }
    }
    return theta;
}

void character_transform(std::vector<long long>& buckets, int q, int d, long n_buckets) {
    const std::uint64_t n = pow_checked(q, d);
    const long N = n_buckets;
    if (buckets.size() != n * std::uint64_t(N))
        throw std::invalid_argument("character transform: bucket row size mismatch");
    if (N % q != 0) throw std::invalid_argument("character transform: q must divide bucket count");
    const long rot = N / q;
    std::vector<long long> tmp(std::size_t(q) * N);
    std::uint64_t stride = 1;
    for (int dim = 0; dim < d; ++dim) {
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < n; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                std::fill(tmp.begin(), tmp.end(), 0);
                for (int t = 0; t < q; ++t) {
                    const long long* src = &buckets[(base + off + t * stride) * N];
                    for (int tp = 0; tp < q; ++tp) {
                        long long* dst = &tmp[std::size_t(tp) * N];
                        const long shift = (rot * ((long(t) * tp) % q)) % N;
                        for (long j = 0; j < N; ++j) {
                            long k = j + shift;
                            if (k >= N) k -= N;
                            dst[k] += src[j];
                        }
                    }
                }
                for (int tp = 0; tp < q; ++tp)
                    std::copy_n(&tmp[std::size_t(tp) * N], N,
                                &buckets[(base + off + tp * stride) * N]);
            }
        }
        stride = block;
    }
}

void character_transform(std::vector<std::complex<double>>& values, int q, int d) {
    const std::uint64_t n = pow_checked(q, d);
    if (values.size() != n) throw std::invalid_argument("character transform: size mismatch");
    std::vector<std::complex<double>> root(q);
    for (int j = 0; j < q; ++j) {
        double ang = 2.0 * std::numbers::pi * j / q;
        root[j] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> tmp(q);
    std::uint64_t stride = 1;
    for (int dim = 0; dim < d; ++dim) {
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < n; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (int tp = 0; tp < q; ++tp) {
                    std::complex<double> acc = 0;
                    for (int t = 0; t < q; ++t)
                        acc += values[base + off + t * stride] * root[(t * tp) % q];
                    tmp[tp] = acc;
                }
                for (int tp = 0; tp < q; ++tp) values[base + off + tp * stride] = tmp[tp];
            }
        }
        stride = block;
    }
}

}  // namespace qmix::cayley
