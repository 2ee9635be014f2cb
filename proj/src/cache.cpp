#include "nftrap/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace nftrap {

namespace fs = std::filesystem;

MatrixCache::MatrixCache(std::string directory) : dir_(std::move(directory))
{
    if (!dir_.empty()) fs::create_directories(dir_);
}

MatrixCache MatrixCache::memory()
{
    MatrixCache c;
    c.memory_only_ = true;
    return c;
}

std::string MatrixCache::hash_name(const std::string& key)
{
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

bool MatrixCache::load(const std::string& key, Eigen::MatrixXcd& out)
{
    if (!enabled()) return false;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = mem_.find(key);
        if (it != mem_.end()) {
            out = it->second;
            return true;
        }
    }
    if (dir_.empty()) return false;
    fs::path p = fs::path(dir_) / (hash_name(key) + ".bin");
    std::ifstream f(p, std::ios::binary);
    if (!f) return false;
    char magic[4];
    uint64_t rows, cols, keylen;
    f.read(magic, 4);
    f.read(reinterpret_cast<char*>(&rows), 8);
    f.read(reinterpret_cast<char*>(&cols), 8);
    f.read(reinterpret_cast<char*>(&keylen), 8);
    if (!f || std::string(magic, 4) != "NFTC") return false;
    std::string stored(keylen, '\0');
    f.read(stored.data(), keylen);
    if (!f || stored != key) return false; // hash collision or stale file
    out.resize(rows, cols);
    f.read(reinterpret_cast<char*>(out.data()),
           sizeof(std::complex<double>) * rows * cols);
    if (!f) return false;
    std::lock_guard<std::mutex> lock(mutex_);
    mem_.emplace(key, out);
    return true;
}

void MatrixCache::store(const std::string& key, const Eigen::MatrixXcd& m)
{
    if (!enabled()) return;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        mem_.emplace(key, m);
    }
    if (dir_.empty()) return;
    fs::path final_p = fs::path(dir_) / (hash_name(key) + ".bin");
    fs::path tmp_p = final_p;
    tmp_p += ".tmp" + std::to_string(
        std::hash<std::thread::id>{}(std::this_thread::get_id()) & 0xffff);
    {
        std::ofstream f(tmp_p, std::ios::binary | std::ios::trunc);
        if (!f) return;
        uint64_t rows = m.rows(), cols = m.cols(), keylen = key.size();
        f.write("NFTC", 4);
        f.write(reinterpret_cast<const char*>(&rows), 8);
        f.write(reinterpret_cast<const char*>(&cols), 8);
        f.write(reinterpret_cast<const char*>(&keylen), 8);
        f.write(key.data(), keylen);
        f.write(reinterpret_cast<const char*>(m.data()),
                sizeof(std::complex<double>) * rows * cols);
    }
    std::error_code ec;
    fs::rename(tmp_p, final_p, ec);
    if (ec) fs::remove(tmp_p, ec);
}

} // namespace nftrap
