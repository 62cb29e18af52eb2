# thetaprism - Source Package
