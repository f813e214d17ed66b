// Copyright 2026 The bellsym Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Argument value parsers.

use std::f64::consts::PI;

/// Real number or symbolic constant: `sqrt2`, `sqrt(3)`, `pi`, `pi/2`, `2pi`, `1.5`.
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    if let Some((num, den)) = t.split_once('/') {
        let d = real(den)?;
        if d == 0.0 {
            return Err(format!("division by zero in '{s}'"));
        }
        return Ok(real(num)? / d);
    }
    if let Some(rest) = t.strip_prefix("sqrt") {
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        let v = real(inner)?;
        if v < 0.0 {
            return Err(format!("square root of a negative number in '{s}'"));
        }
        return Ok(v.sqrt());
    }
    if let Some(coef) = t.strip_suffix("pi") {
        let c = match coef.trim_end_matches('*') {
            "" => 1.0,
            c => c.parse::<f64>().map_err(|_| format!("cannot parse '{s}'"))?,
        };
        return Ok(c * PI);
    }
    let v = t.parse::<f64>().map_err(|_| format!("cannot parse '{s}' as a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

/// Non-empty list of integers: `7`, `2,4,9`, `5-40`, `5..40`, `5..=40`, or a mix.
pub fn usize_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let range = part.split_once("..=").or_else(|| part.split_once("..")).or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => {
                let (a, b) = (int(a)?, int(b)?);
                if a > b {
                    return Err(format!("empty range '{part}'"));
                }
                out.extend(a..=b);
            }
            None => out.push(int(part)?),
        }
    }
    if out.is_empty() {
        return Err(format!("empty list '{s}'"));
    }
    Ok(out)
}

fn int(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("cannot parse '{s}' as a non-negative integer"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_reals() {
        assert_eq!(real("sqrt2").unwrap(), 2f64.sqrt());
        assert_eq!(real("sqrt(3)").unwrap(), 3f64.sqrt());
        assert_eq!(real("pi/2").unwrap(), PI / 2.0);
        assert_eq!(real("2pi").unwrap(), 2.0 * PI);
        assert_eq!(real("1/sqrt2").unwrap(), 1.0 / 2f64.sqrt());
        assert_eq!(real("1.25").unwrap(), 1.25);
        assert!(real("pie").is_err());
        assert!(real("1/0").is_err());
        assert!(real("inf").is_err());
    }

    #[test]
    fn integer_lists() {
        assert_eq!(usize_list("3").unwrap(), vec![3]);
        assert_eq!(usize_list("1-3,7").unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(usize_list("5..=7").unwrap(), vec![5, 6, 7]);
        assert!(usize_list("").is_err());
        assert!(usize_list("4-2").is_err());
        assert!(usize_list("x").is_err());
    }
}
