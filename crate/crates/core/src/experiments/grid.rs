use crate::error::{Error, Result};

fn grid_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::Grid {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// One axis: `a,b,c`, `lin:start:stop:n` or `log:start:stop:n`.
pub fn parse_axis(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| grid_err(spec, format!("`{s}` is not a finite number")))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [kind @ ("lin" | "log"), a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n
                .trim()
                .parse()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| grid_err(spec, "point count must be a positive integer"))?;
            if *kind == "log" && !(a > 0.0 && b > 0.0) {
                return Err(grid_err(spec, "log bounds must be positive"));
            }
            let at = |i: usize| {
                if n == 1 {
                    return 0.0;
                }
                i as f64 / (n - 1) as f64
            };
            Ok((0..n)
                .map(|i| match *kind {
                    "lin" => a + (b - a) * at(i),
                    _ => (a.ln() + (b.ln() - a.ln()) * at(i)).exp(),
                })
                .collect())
        }
        [single] => {
            let values: Vec<f64> = single.split(',').map(num).collect::<Result<_>>()?;
            Ok(values)
        }
        _ => Err(grid_err(spec, "expected a comma list, lin:a:b:n or log:a:b:n")),
    }
}

/// Either one axis or `X/Y` for a rectangular grid (x varies fastest).
pub fn parse_grid(spec: &str) -> Result<Vec<(f64, Option<f64>)>> {
    match spec.split_once('/') {
        None => Ok(parse_axis(spec)?.into_iter().map(|x| (x, None)).collect()),
        Some((xs, ys)) => {
            let xs = parse_axis(xs)?;
            let ys = parse_axis(ys)?;
            Ok(ys.iter().flat_map(|y| xs.iter().map(move |x| (*x, Some(*y)))).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn axes() {
        assert_eq!(parse_axis("256,512, 1024").unwrap(), vec![256.0, 512.0, 1024.0]);
        assert_eq!(parse_axis("lin:0:10:3").unwrap(), vec![0.0, 5.0, 10.0]);
        assert_eq!(parse_axis("lin:4:9:1").unwrap(), vec![4.0]);
        let l = parse_axis("log:1:100:3").unwrap();
        assert_relative_eq!(l[1], 10.0, max_relative = 1e-12);
        assert_relative_eq!(l[2], 100.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects() {
        for bad in ["", "lin:0:1:0", "log:0:1:3", "lin:0:1", "a,b", "lin:0:x:3", "inf"] {
            assert!(matches!(parse_axis(bad), Err(Error::Grid { .. })), "{bad}");
        }
    }

    #[test]
    fn rectangular() {
        let g = parse_grid("1,2/10,20").unwrap();
        assert_eq!(
            g,
            vec![
                (1.0, Some(10.0)),
                (2.0, Some(10.0)),
                (1.0, Some(20.0)),
                (2.0, Some(20.0))
            ]
        );
        assert_eq!(parse_grid("3").unwrap(), vec![(3.0, None)]);
    }
}
