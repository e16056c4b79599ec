//! CSV formats for jump records, histograms and theory curves.

use std::io::{BufRead, Write};

use qtraj_core::correlations::{G2Histogram, Normalization};
use qtraj_core::trajectory::{ChannelId, JumpRecord};

use crate::CliError;

pub const RECORDS_HEADER: &str = "trajectory_id,channel,time";
pub const HISTOGRAM_HEADER: &str = "tau_center,raw_count,g2";
pub const THEORY_HEADER: &str = "tau,value";

/// Significant digits kept for record times.
pub const TIME_DIGITS: i32 = 9;

/// Fixed-point decimal with [`TIME_DIGITS`] significant digits.
pub fn format_time(t: f64) -> String {
    if t == 0.0 || !t.is_finite() {
        return format!("{t}");
    }
    let magnitude = t.abs().log10().floor() as i32;
    let decimals = (TIME_DIGITS - 1 - magnitude).max(0) as usize;
    format!("{t:.decimals$}")
}

pub fn write_records<W: Write>(out: &mut W, records: &[JumpRecord]) -> std::io::Result<()> {
    writeln!(out, "{RECORDS_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{}",
            r.trajectory_id,
            r.channel,
            format_time(r.time)
        )?;
    }
    Ok(())
}

fn parse_record(line: &str) -> Result<JumpRecord, String> {
    let mut fields = line.split(',');
    let (Some(id), Some(channel), Some(time), None) =
        (fields.next(), fields.next(), fields.next(), fields.next())
    else {
        return Err(format!("expected 3 fields, got `{line}`"));
    };
    let trajectory_id = id
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("trajectory_id `{id}`: {e}"))?;
    let channel = channel
        .trim()
        .parse::<ChannelId>()
        .map_err(|e| e.to_string())?;
    let time = time
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("time `{time}`: {e}"))?;
    if !(time >= 0.0 && time.is_finite()) {
        return Err(format!("time must be finite and >= 0, got {time}"));
    }
    Ok(JumpRecord {
        trajectory_id,
        time,
        channel,
    })
}

/// Reads a record file. Rows are numbered from 1 with the header as row 1.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<JumpRecord>, CliError> {
    let mut records = Vec::new();
    let mut saw_header = false;
    for (idx, line) in input.lines().enumerate() {
        let row = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if !saw_header {
            if line.trim() != RECORDS_HEADER {
                return Err(CliError::Row {
                    row,
                    message: format!("expected header `{RECORDS_HEADER}`, got `{line}`"),
                });
            }
            saw_header = true;
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        records.push(parse_record(line).map_err(|message| CliError::Row { row, message })?);
    }
    if !saw_header {
        return Err(CliError::Row {
            row: 1,
            message: "empty record file".into(),
        });
    }
    Ok(records)
}

pub fn write_histogram<W: Write>(out: &mut W, h: &G2Histogram) -> std::io::Result<()> {
    writeln!(out, "# kind={}", h.kind)?;
    writeln!(out, "# lookahead={}", h.lookahead)?;
    writeln!(out, "# normalization={}", h.normalization)?;
    writeln!(out, "# n_tau={}", h.n_tau())?;
    writeln!(out, "# bins={}", h.n_bins())?;
    writeln!(out, "# tau_max={}", h.tau_max)?;
    writeln!(out, "{HISTOGRAM_HEADER}")?;
    for i in 0..h.n_bins() {
        writeln!(out, "{},{},{}", h.bin_center(i), h.counts[i], h.values[i])?;
    }
    Ok(())
}

/// Parsed histogram file: metadata lines and the bin rows.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramFile {
    pub meta: Vec<(String, String)>,
    pub tau_center: Vec<f64>,
    pub raw_count: Vec<u64>,
    pub g2: Vec<f64>,
}

impl HistogramFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn n_tau(&self) -> u64 {
        self.raw_count.iter().sum()
    }

    /// Rebuilds the histogram, taking binning and normalization from the
    /// metadata.
    pub fn to_histogram(&self) -> Result<G2Histogram, CliError> {
        let missing = |key: &str| CliError::Row {
            row: 0,
            message: format!("histogram metadata lacks `{key}`"),
        };
        let tau_max: f64 = self
            .meta("tau_max")
            .ok_or_else(|| missing("tau_max"))?
            .parse()
            .map_err(|_| missing("tau_max"))?;
        let normalization = match self.meta("normalization") {
            Some("global_ratio") | None => Normalization::GlobalRatio,
            Some(other) => {
                let tau_min = other
                    .strip_prefix("steady_state(tau>")
                    .and_then(|s| s.strip_suffix(')'))
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| missing("normalization"))?;
                Normalization::SteadyState { tau_min }
            }
        };
        Ok(G2Histogram {
            tau_max,
            counts: self.raw_count.clone(),
            values: self.g2.clone(),
            normalization,
            kind: self.meta("kind").unwrap_or_default().to_string(),
            lookahead: self
                .meta("lookahead")
                .and_then(|s| s.parse().ok())
                .unwrap_or(qtraj_core::correlations::DEFAULT_LOOKAHEAD),
        })
    }
}

pub fn read_histogram<R: BufRead>(input: R) -> Result<HistogramFile, CliError> {
    let mut file = HistogramFile {
        meta: Vec::new(),
        tau_center: Vec::new(),
        raw_count: Vec::new(),
        g2: Vec::new(),
    };
    let mut saw_header = false;
    for (idx, line) in input.lines().enumerate() {
        let row = idx + 1;
        let line = line?;
        let line = line.trim();
        let bad = |message: String| CliError::Row { row, message };
        if let Some(meta) = line.strip_prefix('#') {
            let (k, v) = meta
                .trim()
                .split_once('=')
                .ok_or_else(|| bad(format!("metadata line without `=`: `{line}`")))?;
            file.meta.push((k.trim().to_string(), v.trim().to_string()));
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if !saw_header {
            if line != HISTOGRAM_HEADER {
                return Err(bad(format!(
                    "expected header `{HISTOGRAM_HEADER}`, got `{line}`"
                )));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let [tau, count, g2] = fields[..] else {
            return Err(bad(format!("expected 3 fields, got `{line}`")));
        };
        file.tau_center.push(
            tau.parse()
                .map_err(|e| bad(format!("tau_center `{tau}`: {e}")))?,
        );
        file.raw_count.push(
            count
                .parse()
                .map_err(|e| bad(format!("raw_count `{count}`: {e}")))?,
        );
        file.g2
            .push(g2.parse().map_err(|e| bad(format!("g2 `{g2}`: {e}")))?);
    }
    if !saw_header {
        return Err(CliError::Row {
            row: 1,
            message: "missing histogram header".into(),
        });
    }
    Ok(file)
}

pub fn write_curve<W: Write>(out: &mut W, rows: &[(f64, f64)]) -> std::io::Result<()> {
    writeln!(out, "{THEORY_HEADER}")?;
    for (tau, value) in rows {
        writeln!(out, "{tau},{value}")?;
    }
    Ok(())
}

pub fn read_curve<R: BufRead>(input: R) -> Result<Vec<(f64, f64)>, CliError> {
    let mut rows = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let row = idx + 1;
        let line = line?;
        if row == 1 {
            if line.trim() != THEORY_HEADER {
                return Err(CliError::Row {
                    row,
                    message: format!("expected header `{THEORY_HEADER}`"),
                });
            }
            continue;
        }
        let bad = |message: String| CliError::Row { row, message };
        let (tau, value) = line
            .split_once(',')
            .ok_or_else(|| bad(format!("expected 2 fields, got `{line}`")))?;
        rows.push((
            tau.trim()
                .parse()
                .map_err(|e| bad(format!("tau `{tau}`: {e}")))?,
            value
                .trim()
                .parse()
                .map_err(|e| bad(format!("value `{value}`: {e}")))?,
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qtraj_core::correlations::build_histogram;

    #[test]
    fn time_digits() {
        assert_eq!(format_time(0.0), "0");
        assert_eq!(format_time(1.0), "1.00000000");
        assert_eq!(format_time(0.001), "0.00100000000");
        assert_eq!(format_time(12345.678), "12345.6780");
        assert_eq!(format_time(99999.999), "99999.9990");
        assert_eq!(format_time(123456789.0), "123456789");
        assert_eq!(format_time(0.1 + 0.2), "0.300000000");
        for t in [0.001, 3.217, 1234.5, 99999.999] {
            assert_eq!(format_time(t).parse::<f64>().unwrap(), t);
        }
    }

    #[test]
    fn records_round_trip() {
        let recs = vec![
            JumpRecord {
                trajectory_id: 0,
                time: 0.5,
                channel: ChannelId::Gamma(1),
            },
            JumpRecord {
                trajectory_id: 0,
                time: 1.25,
                channel: ChannelId::Kappa,
            },
            JumpRecord {
                trajectory_id: 7,
                time: 3.0,
                channel: ChannelId::Gamma(2),
            },
        ];
        let mut buf = Vec::new();
        write_records(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "trajectory_id,channel,time\n0,gamma1,0.500000000\n0,kappa,1.25000000\n7,gamma2,3.00000000\n"
        );
        assert_eq!(read_records(&buf[..]).unwrap(), recs);
    }

    #[test]
    fn malformed_rows_report_row_number() {
        let cases = [
            (
                "trajectory_id,channel,time\n0,gamma1,1.0\n0,gamma9x,2.0\n",
                3,
            ),
            ("trajectory_id,channel,time\n0,gamma1\n", 2),
            ("trajectory_id,channel,time\n0,kappa,1.0,9\n", 2),
            ("trajectory_id,channel,time\n-1,kappa,1.0\n", 2),
            ("trajectory_id,channel,time\n0,kappa,-1.0\n", 2),
            ("trajectory_id,channel,time\n0,kappa,NaN\n", 2),
            ("trajectory_id,channel,time\n0,gamma0,1\n", 2),
            ("id,channel,time\n", 1),
            ("", 1),
        ];
        for (text, want) in cases {
            match read_records(text.as_bytes()) {
                Err(CliError::Row { row, .. }) => assert_eq!(row, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn histogram_round_trip() {
        let h = build_histogram(&[0.05, 0.15, 0.15, 0.95], 10, 1.0).unwrap();
        let mut buf = Vec::new();
        write_histogram(&mut buf, &h).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# kind="));
        assert!(text.contains("# n_tau=4\n"));
        assert!(text.contains("\ntau_center,raw_count,g2\n0.05,1,2.5\n"));
        let back = read_histogram(&buf[..]).unwrap();
        assert_eq!(back.meta("bins"), Some("10"));
        assert_eq!(back.n_tau(), 4);
        assert_eq!(back.to_histogram().unwrap(), h);
    }

    #[test]
    fn curve_round_trip() {
        let rows = vec![(0.0, 9.0), (0.5, 0.25)];
        let mut buf = Vec::new();
        write_curve(&mut buf, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "tau,value\n0,9\n0.5,0.25\n"
        );
        assert_eq!(read_curve(&buf[..]).unwrap(), rows);
    }
}
