use std::io::Write;
use std::path::Path;

use eqcdj::LogReal;

use crate::CliError;

/// Rows of one CSV file; the header is always written.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn write_to(&self, out: impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            debug_assert_eq!(r.len(), self.header.len());
            w.write_record(r).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn write(&self, path: Option<&Path>) -> Result<(), CliError> {
        match path {
            Some(p) => {
                let f = std::fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                self.write_to(std::io::BufWriter::new(f))
            }
            None => self.write_to(std::io::stdout().lock()),
        }
    }
}

fn io(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

/// Scientific notation with 12 significant digits and a signed two-digit
/// exponent, e.g. `-1.86285000000e+03`.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.11e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let e: i32 = exp.parse().expect("integer exponent");
    format!("{mant}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}

/// `log10` of a log-domain value; exact zeros print as `-inf`.
pub fn log10(v: LogReal) -> String {
    if v.is_zero() {
        "-inf".into()
    } else {
        sci(v.log10())
    }
}

/// Plot-script stub: x column, y column and an optional grouping column.
pub struct PlotSpec {
    pub x: &'static str,
    pub y: &'static str,
    pub group: Option<&'static str>,
}

pub fn write_plot_script(script: &Path, csv: Option<&Path>, spec: Option<PlotSpec>) -> Result<(), CliError> {
    let csv = csv.ok_or_else(|| CliError::Validation("--plot-script needs --out".into()))?;
    let body = match spec {
        Some(PlotSpec { x, y, group }) => {
            let plot = match group {
                Some(g) => format!(
                    "for key, part in df.groupby(\"{g}\"):\n    ax.plot(part[\"{x}\"], part[\"{y}\"], label=f\"{g}={{key}}\")\nax.legend()\n"
                ),
                None => format!("ax.plot(df[\"{x}\"], df[\"{y}\"], \"o-\")\n"),
            };
            format!(
                "fig, ax = plt.subplots()\n{plot}ax.set_xlabel(\"{x}\")\nax.set_ylabel(\"{y}\")\nfig.savefig(sys.argv[1] if len(sys.argv) > 1 else \"{}.png\")\n",
                csv.display()
            )
        }
        None => "print(df.to_string())\n".into(),
    };
    let text = format!(
        "import sys\n\nimport matplotlib.pyplot as plt\nimport pandas as pd\n\ndf = pd.read_csv(\"{}\")\n{body}",
        csv.display()
    );
    std::fs::write(script, text).map_err(|e| CliError::Io(format!("{}: {e}", script.display())))
}
