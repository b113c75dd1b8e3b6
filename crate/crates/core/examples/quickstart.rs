use rm_rpa::channel::transmit;
use rm_rpa::{decode, ChannelConfig, DecoderConfig, RmCode, RngStream};

fn main() -> Result<(), rm_rpa::Error> {
    let code = RmCode::new(7, 2)?;
    let cfg = DecoderConfig::sdss("1/32".parse()?, "0.85".parse()?);
    let word = code.encode(&vec![0; code.k()])?;
    let stream = RngStream::new(1, 0);
    let llr = transmit(&word, &ChannelConfig::awgn(2.0, code.rate()), &stream)?;
    let out = decode(&llr, &code, &cfg, &stream)?;
    println!("{} after {} FHT decodings", out.codeword, out.fht_count);
    Ok(())
}
