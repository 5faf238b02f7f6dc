#![no_main]

use libfuzzer_sys::fuzz_target;
use qwalk::SweepTable;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = SweepTable::parse_csv(s) {
        // whatever parses must survive a write/parse cycle unchanged
        let again = SweepTable::parse_csv(&table.to_csv()).expect("written table parses");
        assert_eq!(again, table);
    }
});
