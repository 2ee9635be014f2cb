#ifndef NFTRAP_CACHE_HPP
#define NFTRAP_CACHE_HPP

#include <Eigen/Dense>

#include <mutex>
#include <string>
#include <unordered_map>

namespace nftrap {

// Write-once read-many store for complex matrices keyed by a canonical
// string (geometry hash, axis, frequency, k_x, k_y, N). Disk files carry
// a small header (magic, dimensions, key echo); writes go through a
// temporary file and an atomic rename. An in-memory map fronts the disk.
class MatrixCache {
public:
    MatrixCache() = default; // disabled
    explicit MatrixCache(std::string directory);

    bool enabled() const { return !dir_.empty() || memory_only_; }
    static MatrixCache memory();

    bool load(const std::string& key, Eigen::MatrixXcd& out);
    void store(const std::string& key, const Eigen::MatrixXcd& m);

    static std::string hash_name(const std::string& key); // fnv-1a hex

private:
    std::string dir_;
    bool memory_only_ = false;
    std::mutex mutex_;
    std::unordered_map<std::string, Eigen::MatrixXcd> mem_;
};

} // namespace nftrap

#endif
