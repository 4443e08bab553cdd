#include "scambait/defaults.hpp"

namespace scambait::defaults {

namespace {

constexpr const char* kZeroShotPreamble =
    "You are a dull person and gullible person who is easy to persuade. You want to share "
    "information. Do not call them a scam. Keep conversation going. Ask follow-up questions. "
    "Do not give any personal information. Greet them in the start.";

constexpr const char* kFewShotPreamble =
    "You are good at pattern following. You are a person and not a language model. Do not "
    "call them a scam.";

// Two exemplar pairs from each of three fraud categories (transactional,
// lottery, romance). Placeholder exchanges with the production shape;
// operators replace them with real archived excerpts via the config file.
std::vector<ExemplarPair> exemplar_pairs() {
    return {
        {"Dear Sir, I am a bank officer handling the estate of a late client who shares your "
         "surname. The sum of $8.5 million awaits transfer and I need a trustworthy foreign "
         "partner to receive the funds. Reply urgently with your details.",
         "Hello, thank you for thinking of me. This sounds like quite an opportunity. Before I "
         "send anything, could you explain how you found me and what exactly you need from my "
         "side? I want to be sure I do this properly."},
        {"Thank you for your response. To proceed I require your full name, your address and a "
         "processing fee of $250 payable by wire transfer today.",
         "I see. The fee is no problem once I understand the process better. Which bank will "
         "handle the transfer, and can the fee be taken out of the $8.5 million instead? I have "
         "never wired money before, so please walk me through it."},
        {"CONGRATULATIONS! Your email address has won 1,000,000 euros in our international "
         "draw. Contact our claims agent immediately with your winning reference to begin "
         "processing.",
         "Good afternoon, what wonderful news! I never win anything. I cannot find the "
         "reference in your message though. Could you resend it, and tell me how long I have to "
         "claim before it expires?"},
        {"Your winnings are confirmed. To release the prize we require a notarized claim form "
         "and a courier charge of 95 euros.",
         "Thank you for confirming. Ninety-five euros seems reasonable for such a prize. Is "
         "there an office where I can pay in person? My nephew says I should always ask for an "
         "office address. What papers should I bring?"},
        {"My dearest, since we began writing I think of you always. I long to visit you, but my "
         "work contract abroad keeps me here until I can settle an outstanding customs charge.",
         "My dear, your letters brighten my whole week. I would so love to meet at last. Tell "
         "me more about this customs trouble. How did it happen, and what do the officials say "
         "you must do?"},
        {"The customs office demands $900 before they release my documents. If you could help "
         "me with even part of it, I could finally travel to you, my love.",
         "Oh my, $900 is a lot, but you are worth far more to me. Before I go to the bank, "
         "could you send me the customs paperwork and the name of the office? I want to make "
         "sure it reaches the right people."},
    };
}

} // namespace

StrategyConfig zero_shot_strategy() {
    StrategyConfig config;
    config.id = "chat-replier-1";
    config.kind = StrategyKind::ZeroShotPersona;
    config.preamble = kZeroShotPreamble;
    config.sampling = {0.2, 0.2};
    config.context_policy = ContextPolicy::LatestInboundOnly;
    config.candidates_k = kCandidates;
    return config;
}

StrategyConfig few_shot_strategy() {
    StrategyConfig config;
    config.id = "chat-replier-2";
    config.kind = StrategyKind::FewShotExemplar;
    config.preamble = kFewShotPreamble;
    config.exemplars = exemplar_pairs();
    config.sampling = {0.2, 0.2};
    config.context_policy = ContextPolicy::LatestInboundOnly;
    config.candidates_k = kCandidates;
    return config;
}

StrategyConfig classifier_template_strategy() {
    StrategyConfig config;
    config.id = "classifier-template";
    config.kind = StrategyKind::ClassifierTemplate;
    config.candidates_k = 1;
    return config;
}

std::vector<StrategyConfig> strategies() {
    return {zero_shot_strategy(), few_shot_strategy(), classifier_template_strategy()};
}

std::vector<CategoryLexicon> classifier_lexicons() {
    // five broad fraud categories; the fallback absorbs texts with no hits
    return {
        {"advance_fee",
         {"million", "beneficiary", "next of kin", "inheritance", "consignment", "fund",
          "transfer fee", "urgent assistance", "estate", "diplomat"}},
        {"lottery",
         {"lottery", "winnings", "prize", "claim your prize", "jackpot", "draw", "winner",
          "lucky", "raffle"}},
        {"romance",
         {"love", "darling", "my dear", "lonely", "heart", "relationship", "marriage",
          "soulmate", "kisses"}},
        {"transactional",
         {"invoice", "payment", "order", "shipment", "account", "bank transfer", "receipt",
          "purchase", "delivery", "refund"}},
        {"investment",
         {"investment", "investor", "profit", "returns", "bitcoin", "crypto", "shares",
          "portfolio", "lucrative", "trading"}},
    };
}

KeywordClassifier classifier() {
    return KeywordClassifier(classifier_lexicons(), kClassifierFallback);
}

TemplateBank template_bank() {
    TemplateBank bank;
    bank.templates["advance_fee"] = {
        "Dear friend,\n\nYour proposal has reached me at the right moment. I am very careful "
        "with money matters, so please tell me again how the transfer would work and which "
        "documents you hold. I am eager to hear every detail.\n\nYours faithfully,\nA willing "
        "partner",
        "Hello,\n\nWhat you describe sounds important, and I would not want the funds to go to "
        "the wrong person. Could you describe the steps one more time, slowly? I also wonder "
        "whether a smaller first transfer would be possible.\n\nKind regards",
        "Dear Sir or Madam,\n\nI have read your message twice and I am still amazed. Before "
        "anything else, may I ask how you obtained my address, and whether the paperwork can "
        "be sent to me by post?\n\nWith thanks",
    };
    bank.templates["lottery"] = {
        "Dear claims department,\n\nI am delighted about the winning notification. I have "
        "never won anything before and want to do this correctly. Please tell me exactly what "
        "I must send and whether the deadline can be extended.\n\nYours sincerely,\nA lucky "
        "winner",
        "Hello,\n\nThank you for the wonderful news about the prize. My neighbour says these "
        "draws can take a long time. How soon would the money arrive, and is there a telephone "
        "line where I can hear the confirmation myself?\n\nBest wishes",
        "Dear madam or sir,\n\nThe notification arrived in my spam folder, can you imagine! "
        "Please resend the claim instructions and tell me whether the courier can collect the "
        "papers from my cousin instead.\n\nGratefully yours",
    };
    bank.templates["romance"] = {
        "My dear,\n\nYour message warmed me greatly. I have been lonely for some time and "
        "your words arrive like sunshine. Tell me more about where you are staying and what "
        "your days look like.\n\nThinking of you",
        "Dearest,\n\nI read your letter three times before bed. I would like to know "
        "everything about you. What is your favourite meal, and when might we finally speak "
        "properly?\n\nWith warm affection",
        "Hello my dear,\n\nForgive my slow reply, my little dog was unwell. Your plans sound "
        "romantic. Before we go further, could you send another photograph and tell me about "
        "your family?\n\nYours warmly",
    };
    bank.templates["transactional"] = {
        "Hello,\n\nI received your note about the pending order. I do not remember the "
        "purchase, but I am sure you can clarify. Please send the full order description and "
        "the name of the shop.\n\nRegards",
        "Dear team,\n\nThank you for the reminder about the invoice. My records show nothing "
        "outstanding, so kindly resend the paperwork with the itemised charges. I always pay "
        "what I truly owe.\n\nSincerely",
        "Good day,\n\nYour message about the delivery caught my attention. Which courier is "
        "holding the parcel, and can I collect it in person? I prefer to handle these things "
        "face to face.\n\nMany thanks",
    };
    bank.templates["investment"] = {
        "Dear advisor,\n\nYour opportunity sounds intriguing. I keep my savings close, but I "
        "am willing to listen. Please explain the plan in simple words and tell me the "
        "smallest amount one can start with.\n\nCordially",
        "Hello,\n\nI have always wanted my money to work harder. Before I decide, could you "
        "share how long you have offered this plan and what happens if I wish to withdraw "
        "early?\n\nWith interest",
        "Dear Sir,\n\nMy late husband handled our finances, so please be patient with my "
        "questions. How are the gains calculated, and may I speak with another client of "
        "yours first?\n\nRespectfully",
    };
    return bank;
}

SafetyPolicy safety_policy() {
    SafetyPolicy policy;
    policy.callout_lexicon = {"scam", "scammer", "fraud", "fraudster", "phishing", "419"};
    policy.self_reveal_lexicon = {"AI language model", "language model", "as an AI",
                                  "I am an artificial"};
    policy.pii.min_phone_digits = 7;
    policy.pii.min_account_digits = 8;
    policy.pii.street_words = {"street", "st", "avenue", "ave", "road", "rd",
                               "lane", "ln", "drive", "dr", "boulevard", "blvd",
                               "court", "ct", "way", "place", "crescent"};
    policy.allow_fake_pii = false;
    return policy;
}

BaselineRow baseline() {
    BaselineRow row;
    row.label = "Chen et al.";
    row.mean_replies = 2.45;
    row.max_replies = 5;
    row.max_time_days = 17.2;
    row.compare_strategy_id = "classifier-template";
    return row;
}

} // namespace scambait::defaults
