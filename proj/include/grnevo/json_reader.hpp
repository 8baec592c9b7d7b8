#pragma once

// Internal helpers for reading JSON documents with located diagnostics.

#include <cstdint>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "grnevo/network_io.hpp"

namespace grnevo::detail {

/// A JSON value together with its pointer inside the document.
class JsonNode {
public:
    JsonNode(const nlohmann::json& value, std::string pointer, const std::string& source)
        : value_(&value), pointer_(std::move(pointer)), source_(&source)
    {
    }

    [[nodiscard]] const nlohmann::json& value() const noexcept { return *value_; }
    [[nodiscard]] const std::string& pointer() const noexcept { return pointer_; }
    [[noreturn]] void fail(const std::string& message) const
    {
        throw DocumentError(*source_, pointer_.empty() ? "/" : pointer_, message);
    }

    [[nodiscard]] bool has(const std::string& key) const { return value_->is_object() && value_->contains(key); }
    [[nodiscard]] JsonNode at(const std::string& key) const
    {
        if (!value_->is_object()) {
            fail("expected an object");
        }
        const auto it = value_->find(key);
        if (it == value_->end()) {
            fail("missing key '" + key + "'");
        }
        return {*it, pointer_ + "/" + escape(key), *source_};
    }
    [[nodiscard]] JsonNode at(std::size_t index) const
    {
        return {(*value_)[index], pointer_ + "/" + std::to_string(index), *source_};
    }

    /// Rejects object keys outside `allowed`.
    void only_keys(std::initializer_list<const char*> allowed) const
    {
        if (!value_->is_object()) {
            fail("expected an object");
        }
        for (const auto& item : value_->items()) {
            bool known = false;
            for (const char* key : allowed) {
                known = known || item.key() == key;
            }
            if (!known) {
                JsonNode(item.value(), pointer_ + "/" + escape(item.key()), *source_).fail("unknown key '" + item.key() + "'");
            }
        }
    }

    [[nodiscard]] std::size_t array_size() const
    {
        if (!value_->is_array()) {
            fail("expected an array");
        }
        return value_->size();
    }
    [[nodiscard]] double number() const
    {
        if (!value_->is_number()) {
            fail("expected a number");
        }
        return value_->get<double>();
    }
    [[nodiscard]] int integer() const
    {
        if (!value_->is_number_integer()) {
            fail("expected an integer");
        }
        return value_->get<int>();
    }
    [[nodiscard]] std::uint64_t unsigned_integer() const
    {
        if (!value_->is_number_unsigned()) {
            fail("expected a non-negative integer");
        }
        return value_->get<std::uint64_t>();
    }
    [[nodiscard]] bool boolean() const
    {
        if (!value_->is_boolean()) {
            fail("expected true or false");
        }
        return value_->get<bool>();
    }
    [[nodiscard]] std::string string() const
    {
        if (!value_->is_string()) {
            fail("expected a string");
        }
        return value_->get<std::string>();
    }

private:
    static std::string escape(const std::string& key)
    {
        std::string out;
        for (char c : key) {
            if (c == '~') {
                out += "~0";
            }
            else if (c == '/') {
                out += "~1";
            }
            else {
                out += c;
            }
        }
        return out;
    }

    const nlohmann::json* value_;
    std::string pointer_;
    const std::string* source_;
};

/// Parses text, converting syntax errors into DocumentError with line/column.
[[nodiscard]] nlohmann::json parse_document(const std::string& text, const std::string& source);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

} // namespace grnevo::detail
