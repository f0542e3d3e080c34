/*
 * Copyright 2026 The nltiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#ifndef NLTISO_ERROR_HPP
#define NLTISO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nltiso
{

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Time or lag index outside the valid range of a series.
class IndexError : public Error
{
public:
    using Error::Error;
};

/// Time pushed out of order into a window.
class OrderingError : public Error
{
public:
    using Error::Error;
};

/// Containers of incompatible shape.
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// Coefficient state and kernel vector built for different windows.
class AlignmentError : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

class InputError : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    using Error::Error;
};

/// Zero-variance or otherwise unusable column.
class DegenerateError : public Error
{
public:
    using Error::Error;
};

class RangeError : public Error
{
public:
    using Error::Error;
};

} // namespace nltiso

#endif
