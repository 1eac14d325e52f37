use flatlab_cli::{execute, Status};

fn main() {
    let report = execute(std::env::args());
    if let (Status::Verified, Some(e)) = (report.status, &report.error) {
        // --help and --version
        print!("{}", e["message"].as_str().unwrap_or_default());
        return;
    }
    println!("{}", report.to_json());
    if let Some(criteria) = report.result.get("criteria").and_then(|c| c.as_array()) {
        for c in criteria {
            eprintln!(
                "{} {:>2} {}: {}",
                if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                c["id"],
                c["title"].as_str().unwrap_or_default(),
                c["summary"].as_str().unwrap_or_default()
            );
        }
    }
    match &report.error {
        Some(e) => eprintln!("{}: {}", report.status_label(), e["message"].as_str().unwrap_or("error")),
        None => eprintln!("{}", report.status_label()),
    }
    std::process::exit(report.exit_status);
}
